"""Randomized stress harness for the certificate pipeline."""

from collections import Counter

import numpy as np

from .certificate import global_audit
from .errors import BadParameter
from .numeric import VelocityField, is_infinitesimally_rigid

SAMPLERS = ("gaussian", "gaussian_planted", "kernel", "planted_kernel")


def _combine(basis, rng, n):
    if not basis:
        return None
    coef = rng.standard_normal(len(basis))
    return VelocityField(sum(c * b.a for c, b in zip(coef, basis)).reshape(n, 3))


def sample_field(kind, p, rng, verdict):
    """Draw one field of the given kind; None if the sampler has nothing to draw from."""
    n = p.n
    if kind == "gaussian":
        return VelocityField(rng.standard_normal((n, 3)))
    if kind == "gaussian_planted":
        a = rng.standard_normal((n, 3))
        a[list(verdict.base)] = 0.0
        return VelocityField(a)
    if kind == "kernel":
        return _combine(verdict.full.basis, rng, n)
    if kind == "planted_kernel":
        return _combine(verdict.planted.basis, rng, n)
    raise ValueError(f"unknown sampler {kind!r}")


def _empty_row():
    return {"trials": 0, "skipped": 0, "admissible": 0, "mixed_signs": 0,
            "planted_admissible": 0, "verdicts": Counter(), "lemma1_violations": 0,
            "lemma2_violations": 0, "identity_violations": 0, "double_count_failures": 0,
            "soundness_failures": 0}


def fuzz(p, trials, seed, config=None, samplers=SAMPLERS):
    """Audit ``trials`` random fields per sampler.

    Trial ``t`` draws from ``default_rng([seed, t])``, so results do not
    depend on evaluation order.  A trial is unsound when a lemma violation
    appears on a strictly convex polytope, or when an admissible planted
    field with live vertices is neither flagged by a lemma nor dead.
    """
    if trials < 1:
        raise BadParameter("trials must be at least 1")
    config = config or p.config
    if config.exact or p.exact:
        raise BadParameter("fuzzing runs in floating mode only")
    verdict = is_infinitesimally_rigid(p, config=config)
    table = {kind: _empty_row() for kind in samplers}
    for t in range(trials):
        rng = np.random.default_rng([seed, t])
        for kind in samplers:
            row = table[kind]
            row["trials"] += 1
            f = sample_field(kind, p, rng, verdict)
            if f is None:
                row["skipped"] += 1
                continue
            rep = global_audit(p, f, config=config)
            row["verdicts"][rep.verdict] += 1
            if not rep.admissible:
                row["mixed_signs"] += 1
                continue
            row["admissible"] += 1
            if rep.total != rep.sum_faces or rep.total != rep.sum_vertices:
                row["double_count_failures"] += 1
            if rep.identity_violations:
                row["identity_violations"] += 1
            lemma = rep.verdict in ("Lemma1Violation", "Lemma2Violation")
            row["lemma1_violations"] += rep.verdict == "Lemma1Violation"
            row["lemma2_violations"] += rep.verdict == "Lemma2Violation"
            if rep.planted:
                row["planted_admissible"] += 1
            if lemma and p.strict:
                row["soundness_failures"] += 1
            elif rep.planted and not lemma and rep.verdict != "AllDead":
                row["soundness_failures"] += 1
    for row in table.values():
        row["verdicts"] = dict(sorted(row["verdicts"].items()))
    sound = all(row["soundness_failures"] == 0 and row["double_count_failures"] == 0
                and row["identity_violations"] == 0 for row in table.values())
    return {"schema": 1, "n": p.n, "strict": p.strict, "base": list(p.base), "seed": seed,
            "trials": trials, "planted_kernel_dimension": verdict.planted.dimension,
            "samplers": table, "sound": sound}
