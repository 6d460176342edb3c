"""Shared JSON conventions for every container in the package.

Complex numbers serialize as two-element [re, im] arrays, kets as arrays
of those, operators as row-major nested arrays.  Every ``*_to_json``
returns plain JSON-compatible data; the matching ``json_to_*`` inverts it.
"""

import numpy as np

from .entangle import ConcentrationPlan
from .mcsim import SimReport
from .minerror import Ensemble, OptimalityReport
from .povm import KrausSet, NaimarkDilation, Povm
from .unambiguous import UnambiguousPovm


def complex_to_pair(z) -> list:
    z = complex(z)
    return [z.real, z.imag]


def pair_to_complex(pair) -> complex:
    re, im = pair
    return complex(re, im)


def ket_to_json(ket) -> list:
    return [complex_to_pair(a) for a in np.asarray(ket, dtype=complex)]


def json_to_ket(data) -> np.ndarray:
    return np.array([pair_to_complex(p) for p in data], dtype=complex)


def operator_to_json(op) -> list:
    return [[complex_to_pair(x) for x in row] for row in np.asarray(op, dtype=complex)]


def json_to_operator(data) -> np.ndarray:
    return np.array([[pair_to_complex(x) for x in row] for row in data], dtype=complex)


def povm_to_json(povm: Povm) -> dict:
    return {
        "elements": [operator_to_json(e) for e in povm.elements],
        "labels": list(povm.labels),
    }


def json_to_povm(data) -> Povm:
    return Povm(tuple(json_to_operator(e) for e in data["elements"]),
                tuple(data["labels"]))


def kraus_to_json(kraus: KrausSet) -> dict:
    return {"operators": [operator_to_json(a) for a in kraus.operators]}


def json_to_kraus(data) -> KrausSet:
    return KrausSet(tuple(json_to_operator(a) for a in data["operators"]))


def ensemble_to_json(ens: Ensemble) -> dict:
    return {
        "states": [operator_to_json(r) for r in ens.states],
        "priors": [float(p) for p in ens.priors],
    }


def json_to_ensemble(data) -> Ensemble:
    return Ensemble(tuple(json_to_operator(r) for r in data["states"]),
                    np.array(data["priors"], dtype=float))


def dilation_to_json(dilation: NaimarkDilation) -> dict:
    return {
        "ancilla_dim": dilation.ancilla_dim,
        "joint_unitary": operator_to_json(dilation.joint_unitary),
        "ancilla_basis": [ket_to_json(k) for k in dilation.ancilla_basis],
        "ancilla_init": ket_to_json(dilation.ancilla_init),
    }


def json_to_dilation(data) -> NaimarkDilation:
    return NaimarkDilation(
        int(data["ancilla_dim"]),
        json_to_operator(data["joint_unitary"]),
        tuple(json_to_ket(k) for k in data["ancilla_basis"]),
        json_to_ket(data["ancilla_init"]),
    )


def unambiguous_to_json(upovm: UnambiguousPovm) -> dict:
    return {
        "conclusive": [operator_to_json(e) for e in upovm.conclusive],
        "inconclusive": operator_to_json(upovm.inconclusive),
        "success_probs": [float(p) for p in upovm.success_probs],
    }


def json_to_unambiguous(data) -> UnambiguousPovm:
    return UnambiguousPovm(
        tuple(json_to_operator(e) for e in data["conclusive"]),
        json_to_operator(data["inconclusive"]),
        np.array(data["success_probs"], dtype=float),
    )


def optimality_report_to_json(report: OptimalityReport) -> dict:
    return {
        "gamma": operator_to_json(report.gamma),
        "pairwise_residuals": [[float(x) for x in row] for row in report.pairwise_residuals],
        "psd_margins": [float(x) for x in report.psd_margins],
        "hermiticity_dev": float(report.hermiticity_dev),
        "passed": bool(report.passed),
    }


def plan_to_json(plan: ConcentrationPlan) -> dict:
    return {
        "coefficients": [float(c) for c in np.real(plan.coefficients)],
        "x_states": [ket_to_json(x) for x in plan.x_states],
        "y_basis": [ket_to_json(y) for y in plan.y_basis],
        "target_basis": [ket_to_json(t) for t in plan.target_basis],
        "orthogonaliser": operator_to_json(plan.orthogonaliser),
        "success_prob": float(plan.success_prob),
    }


def simreport_to_json(report: SimReport) -> dict:
    return {
        "seed": report.config.seed,
        "trials": report.config.trials,
        "confidence": report.config.confidence,
        "outcome_labels": [None if lab is None else str(lab)
                           for lab in report.outcome_labels],
        "counts": [[int(x) for x in row] for row in report.counts],
        "empirical": {k: float(v) for k, v in report.empirical.items()},
        "analytic": {k: float(v) for k, v in report.analytic.items()},
        "stderr": {k: float(v) for k, v in report.stderr.items()},
        "passed": {k: bool(v) for k, v in report.passed.items()},
    }
