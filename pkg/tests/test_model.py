import json
import math

import pytest
from hypothesis import given, strategies as st

from satclock.errors import DomainError, ScenarioFormatError
from satclock.link import db_to_eta, eta_to_db
from satclock.model import (
    CodeParams,
    LinkSpec,
    PurificationPlan,
    PurificationSpec,
    SatelliteSpec,
    Scenario,
    builtin_scenario,
    builtin_scenarios,
    gate_time,
    reference_tables,
    satellite_power,
)


class TestCodeParams:
    def test_defaults_valid(self):
        params = CodeParams()
        assert params.alpha == 0.3
        assert params.beta == 70.0
        assert params.gate_time_T == 50e-9

    @pytest.mark.parametrize(
        "kwargs",
        [
            {"alpha": 0.0},
            {"alpha": -1.0},
            {"beta": 0.0},
            {"p_phys": 0.0},
            {"p_phys": 1.0},
            {"gate_time_T": 0.0},
            {"alpha": math.nan},
            {"gate_time_T": math.inf},
        ],
    )
    def test_rejects_bad_fields(self, kwargs):
        with pytest.raises(DomainError):
            CodeParams(**kwargs)

    def test_rejects_above_threshold(self):
        with pytest.raises(DomainError):
            CodeParams(beta=70.0, p_phys=0.02)  # beta*p = 1.4


class TestPurificationSpec:
    def test_epsilon(self):
        spec = PurificationSpec(f_initial=0.87, f_target=0.999, confidence_S=0.999)
        assert spec.epsilon == pytest.approx(0.001)

    @pytest.mark.parametrize(
        "kwargs",
        [
            {"f_initial": 0.5},
            {"f_initial": 0.3},
            {"f_initial": 1.1},
            {"f_target": 1.0},
            {"f_target": 0.0},
            {"confidence_S": 0.0},
            {"confidence_S": 1.0},
        ],
    )
    def test_rejects_bad_fields(self, kwargs):
        base = {"f_initial": 0.87, "f_target": 0.999, "confidence_S": 0.999}
        base.update(kwargs)
        with pytest.raises(DomainError):
            PurificationSpec(**base)

    def test_perfect_input_allowed(self):
        PurificationSpec(f_initial=1.0, f_target=0.999, confidence_S=0.999)

    def test_from_dict_accepts_consistent_epsilon(self):
        spec = PurificationSpec.from_dict(
            {"f_initial": 0.87, "f_target": 0.999, "confidence_S": 0.999,
             "epsilon": 1.0 - 0.999}
        )
        assert spec.f_target == 0.999
        with pytest.raises(ScenarioFormatError):
            PurificationSpec.from_dict(
                {"f_initial": 0.87, "f_target": 0.999, "confidence_S": 0.999,
                 "epsilon": 0.01}
            )


class TestLinkSpec:
    def test_eta_derived(self):
        spec = LinkSpec(loss_db=45.1, confidence_S=0.999)
        assert spec.eta == pytest.approx(10 ** (-4.51), rel=1e-15)

    def test_consistent_pair_accepted(self):
        eta = 10 ** (-4.51)
        LinkSpec(loss_db=45.1, confidence_S=0.999, eta=eta)

    def test_inconsistent_pair_rejected(self):
        with pytest.raises(DomainError):
            LinkSpec(loss_db=45.1, confidence_S=0.999, eta=2e-5)

    def test_from_eta_round_trip(self):
        spec = LinkSpec.from_eta(0.25, confidence_S=0.9)
        assert spec.eta == 0.25
        assert db_to_eta(spec.loss_db) == pytest.approx(0.25, rel=1e-14)

    def test_negative_loss_rejected(self):
        with pytest.raises(DomainError):
            LinkSpec(loss_db=-1.0, confidence_S=0.9)

    @given(st.floats(min_value=0.0, max_value=200.0))
    def test_db_eta_exact_inverse_pair(self, loss_db):
        eta = db_to_eta(loss_db)
        back = eta_to_db(eta)
        assert back == pytest.approx(loss_db, rel=1e-12, abs=1e-12)


class TestSatelliteSpec:
    @pytest.mark.parametrize("field", ["power_Ps", "source_power_Pr", "source_brightness_Np"])
    def test_rejects_nonpositive(self, field):
        base = {"power_Ps": 1e4, "source_power_Pr": 15e-6, "source_brightness_Np": 4e6}
        base[field] = 0.0
        with pytest.raises(DomainError):
            SatelliteSpec(**base)


class TestPurificationPlan:
    def test_chi_consistency_enforced(self):
        with pytest.raises(DomainError):
            PurificationPlan(
                rounds_N=2,
                fidelity_ladder=(0.87, 0.98, 0.999),
                block_success=(0.77, 0.96),
                ladder_success_P=0.57,
                multiplex_K=9,
                factor_chi=35,
            )

    def test_ladder_must_increase_above_half(self):
        with pytest.raises(DomainError):
            PurificationPlan(
                rounds_N=1,
                fidelity_ladder=(0.9, 0.8),
                block_success=(0.82,),
                ladder_success_P=0.82,
                multiplex_K=1,
                factor_chi=2,
            )

    def test_round_trip(self):
        from satclock.purify import purification_factor

        plan = purification_factor(
            PurificationSpec(f_initial=0.87, f_target=0.999, confidence_S=0.999)
        )
        assert PurificationPlan.from_dict(plan.to_dict()) == plan


class TestScenarioSerialization:
    def test_round_trip_bit_identical(self):
        scenario = builtin_scenario("state")
        again = Scenario.from_json(scenario.to_json())
        assert again == scenario
        # every float survives the text round trip exactly
        assert again.link.eta == scenario.link.eta
        assert again.target_failure_PLB == scenario.target_failure_PLB
        assert scenario.to_json() == again.to_json()

    def test_unknown_keys_rejected(self):
        data = builtin_scenario("state").to_dict()
        data["extra"] = 1
        with pytest.raises(ScenarioFormatError):
            Scenario.from_dict(data)

    def test_nested_unknown_keys_rejected(self):
        data = builtin_scenario("state").to_dict()
        data["code"]["gamma"] = 2.0
        with pytest.raises(ScenarioFormatError):
            Scenario.from_dict(data)

    def test_missing_field_rejected(self):
        data = builtin_scenario("state").to_dict()
        del data["satellite"]
        with pytest.raises(ScenarioFormatError):
            Scenario.from_dict(data)

    def test_non_finite_rejected(self):
        data = builtin_scenario("state").to_dict()
        data["target_failure_PLB"] = math.nan
        with pytest.raises(DomainError):
            Scenario.from_dict(data)

    def test_link_accepts_eta_only(self):
        data = builtin_scenario("state").to_dict()
        eta = data["link"].pop("loss_db") and data["link"]["eta"]
        data["link"] = {"eta": eta, "confidence_S": 0.999}
        scenario = Scenario.from_dict(data)
        assert scenario.link.eta == eta

    def test_bad_target_rejected(self):
        data = builtin_scenario("state").to_dict()
        data["target_failure_PLB"] = 1.5
        with pytest.raises(DomainError):
            Scenario.from_dict(data)


class TestBuiltinCatalog:
    def test_three_scenarios(self):
        labels = [s.label for s in builtin_scenarios()]
        assert labels == ["state", "continental", "transcontinental"]

    def test_losses(self):
        assert builtin_scenario("state").link.loss_db == 45.1
        assert builtin_scenario("continental").link.loss_db == 65.6
        assert builtin_scenario("transcontinental").link.loss_db == 79.1

    def test_shared_parameters(self):
        s = builtin_scenario("state")
        assert s.code.alpha == 0.3
        assert s.code.beta == 70.0
        assert s.code.p_phys == 1e-3
        assert s.target_failure_PLB == 4.28e-21
        assert s.purification.f_initial == 0.87
        assert s.purification.f_target == 0.999
        assert s.purification.confidence_S == 0.999
        assert s.satellite.power_Ps == 10e3
        assert s.satellite.source_power_Pr == 15e-6
        assert s.satellite.source_brightness_Np == 4e6

    def test_unknown_name_rejected(self):
        with pytest.raises(DomainError):
            builtin_scenario("lunar")


class TestReferenceTables:
    def test_gate_times(self):
        assert gate_time("ion trap") == 1.6e-6
        assert gate_time("superconducting") == 50e-9
        assert gate_time("nmr") == 1e-3
        assert gate_time("NV Diamond") == 0.05e-6

    def test_satellite_survey(self):
        assert satellite_power("GSAT-11") == 13.6e3
        assert satellite_power("gsat-30") == 6e3

    def test_tables_structure(self):
        tables = reference_tables()
        names = [row["name"] for row in tables["satellites"]]
        assert names[0] == "GSAT-11"
        assert len(names) == 5
        rates = {row["architecture"]: row["rate_hz"] for row in tables["gate_times"]}
        assert rates["ion trap"] == 6.25e5
        assert rates["nmr"] == 1e3
        assert tables["max_commercial_power_W"] == 10e3
        json.dumps(tables)  # must be plain serializable data

    def test_unknown_lookups_rejected(self):
        with pytest.raises(DomainError):
            gate_time("abacus")
        with pytest.raises(DomainError):
            satellite_power("GSAT-99")
