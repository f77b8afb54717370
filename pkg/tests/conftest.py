import numpy as np
import pytest

import delver as dv
import delver.calibration as cal

CLINICIAN_INSTITUTION = cal.InstitutionSpec(b_i=2787.6, l_i=1858.4, xi=0.5, tau=150.0)


@pytest.fixture(scope="session")
def reference():
    return dv.reference_params()


@pytest.fixture(scope="session")
def clinician_records():
    records, report = cal.ingest_and_clean(cal.fixture_path())
    return records, report


@pytest.fixture(scope="session")
def clinician_worker(clinician_records):
    records, _ = clinician_records
    obs = cal.estimate_observables(records)
    return cal.infer_ability(obs, t_v_max=118.1, t_w_max=262.3)


@pytest.fixture(scope="session")
def clinician_classified(clinician_worker):
    return cal.classify_calibrated(clinician_worker, CLINICIAN_INSTITUTION)


def ability_grid(params, n=7):
    if params.execution_cost.kind == "linear_in_efficiency":
        betas = np.linspace(0.0, 1.0, n)
    else:
        betas = np.linspace(0.25, 2.5, n)
    alphas = np.linspace(0.0, 2.0, n)
    return [dv.Ability(float(a), float(b)) for a in alphas for b in betas]
