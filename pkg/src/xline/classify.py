"""End-to-end decision procedure for a linear group acting on lines.

The pipeline lifts the generators to signed permutations, counts orbits
on signed pairs, tries to build the invariant sign matrix, and, when it
exists, computes its exact spectrum.  Independently, the expected
outcome is predicted from ``d``, ``q mod 4`` and the generator
determinants; any disagreement marks the report inconsistent.
"""
from __future__ import annotations

import json
import os
from dataclasses import dataclass, field
from typing import Sequence

from .errors import (
    BoundExceededError,
    DegenerateSpectrumError,
    NonIntegerMultiplicityError,
    NotTwoTransitiveError,
)
from .paley import PALEY_MATCH_MAX_N, paley_conference, paley_match
from .projgeom import GroupSpec, det_is_square, diag, enum_points
from .seidel import Contradiction, SeidelMatrix, propagate
from .signedrep import (
    SignedOrbitReport,
    SignedPerm,
    is_two_transitive,
    lift,
    orbits_on_signed_pairs,
)
from .spectral import QuadMatrix, QuadVal, Spectrum, eigen_data, equiangular_params, projector, quadratic_minpoly

SCHEMA_VERSION = 1
DEFAULT_MAX_N = 512

IRREDUCIBLE = "IRREDUCIBLE"
SPLITS_REAL = "SPLITS_REAL"
SPLITS_COMPLEX_ONLY = "SPLITS_COMPLEX_ONLY"
INCONSISTENT = "INCONSISTENT"


def max_n_default() -> int:
    env = os.environ.get("XLINE_MAX_N")
    return int(env) if env else DEFAULT_MAX_N


@dataclass(frozen=True)
class Predictions:
    d: int
    q: int
    q_mod_4: int
    in_glplus: bool
    orbits_yxy: int
    orbits_nabla: int
    seidel_exists: bool
    verdict: str
    multiplicities: tuple[int, int] | None
    reason: str

    def as_dict(self) -> dict:
        return {
            "d": self.d,
            "q": self.q,
            "q_mod_4": self.q_mod_4,
            "in_glplus": self.in_glplus,
            "orbits_yxy": self.orbits_yxy,
            "orbits_nabla": self.orbits_nabla,
            "seidel_exists": self.seidel_exists,
            "verdict": self.verdict,
            "multiplicities": list(self.multiplicities) if self.multiplicities else None,
        }


def predict(spec: GroupSpec, n: int) -> Predictions:
    """Expected outcome from d, q mod 4 and whether every determinant is a square."""
    d, q = spec.d, spec.ctx.q
    in_glplus = all(det_is_square(spec.ctx, M) for M in spec.generators)
    if d >= 3:
        return Predictions(
            d, q, q % 4, in_glplus, 3, 1, False, IRREDUCIBLE, None,
            "d >= 3: transitive on pairs of independent vectors, so one orbit on "
            "non-collinear signed pairs, 3 orbits on Y x Y, irreducible",
        )
    if not in_glplus:
        return Predictions(
            d, q, q % 4, in_glplus, 3, 1, False, IRREDUCIBLE, None,
            "d = 2 with a non-square determinant: one orbit on non-collinear "
            "signed pairs, 3 orbits on Y x Y, irreducible",
        )
    if q % 4 == 1:
        half = n // 2
        return Predictions(
            d, q, q % 4, in_glplus, 4, 2, True, SPLITS_REAL, (half, half),
            "d = 2, all determinants square, q = 1 mod 4: two real summands of "
            "equal dimension exchanged by GL_2(q), Paley type",
        )
    return Predictions(
        d, q, q % 4, in_glplus, 4, 2, False, SPLITS_COMPLEX_ONLY, None,
        "d = 2, all determinants square, q = 3 mod 4: the rotation (v1, v2) -> "
        "(v2, -v1) forbids a sign matrix; irreducible over R, splits over C",
    )


@dataclass
class ClassificationReport:
    group_label: str
    n: int
    two_transitive: bool
    orbit_report: SignedOrbitReport
    seidel_exists: bool
    seidel: SeidelMatrix | None = None
    contradiction_certificate: Contradiction | None = None
    spectrum: Spectrum | None = None
    equiangular: tuple[int, QuadVal] | None = None
    verdict: str = INCONSISTENT
    predictions: Predictions | None = None
    checks: dict = field(default_factory=dict)
    notes: list = field(default_factory=list)

    @property
    def consistent(self) -> bool:
        return self.verdict != INCONSISTENT and all(self.checks.values())

    @property
    def multiplicities(self) -> tuple[int, int] | None:
        return self.spectrum.multiplicities if self.spectrum else None

    @property
    def real_summands(self) -> tuple[int, ...] | None:
        """Dimensions of the real invariant summands of the signed representation."""
        if self.verdict in (IRREDUCIBLE, SPLITS_COMPLEX_ONLY):
            return (self.n,)
        if self.verdict == SPLITS_REAL and self.spectrum:
            return self.spectrum.multiplicities
        return None

    def verdict_text(self) -> str:
        if self.verdict == SPLITS_REAL and self.spectrum:
            return f"{SPLITS_REAL}({self.spectrum.m1},{self.spectrum.m2})"
        return self.verdict

    def as_dict(self) -> dict:
        sp = self.spectrum
        out = {
            "schema": SCHEMA_VERSION,
            "group": self.group_label,
            "n": self.n,
            "two_transitive": self.two_transitive,
            "orbits_x2": self.orbit_report.orbit_count_X2,
            "orbits_yxy": self.orbit_report.orbit_count_YxY,
            "orbits_nabla": self.orbit_report.orbit_count_nabla,
            "transitive_on_y": self.orbit_report.transitive_on_Y,
            "seidel_exists": self.seidel_exists,
            "certificate": (
                self.contradiction_certificate.as_dict() if self.contradiction_certificate else None
            ),
            "beta": sp.beta if sp else None,
            "alpha": sp.alpha if sp else None,
            "lambda": [sp.lambda1.to_json(), sp.lambda2.to_json()] if sp else None,
            "multiplicities": list(sp.multiplicities) if sp else None,
            "real_summands": list(self.real_summands) if self.real_summands else None,
            "dimension": self.equiangular[0] if self.equiangular else None,
            "cosine": self.equiangular[1].to_json() if self.equiangular else None,
            "verdict": self.verdict,
            "predictions": self.predictions.as_dict() if self.predictions else None,
            "checks": dict(self.checks),
            "consistent": self.consistent,
        }
        return out

    def to_json(self) -> str:
        return json.dumps(self.as_dict(), indent=2)

    def summary(self) -> str:
        rep = self.orbit_report
        lines = [
            f"group            {self.group_label}",
            f"lines n          {self.n}",
            f"2-transitive     {self.two_transitive}",
            f"orbits on YxY    {rep.orbit_count_YxY} (nabla: {rep.orbit_count_nabla})",
            f"sign matrix      {'exists' if self.seidel_exists else 'none'}",
        ]
        if self.contradiction_certificate:
            lines.append(f"  certificate    {self.contradiction_certificate}")
        if self.spectrum:
            sp = self.spectrum
            lines.append(f"E^2              {sp.beta}*E + {sp.alpha}*I")
            lines.append(
                f"eigenvalues      {sp.lambda1} (x{sp.m1}), {sp.lambda2} (x{sp.m2})"
            )
        if self.equiangular:
            dim, cos = self.equiangular
            lines.append(f"equiangular      {self.n} lines in dimension {dim}, cosine {cos}")
        lines.append(f"verdict          {self.verdict_text()}")
        if self.real_summands:
            lines.append(f"real summands    {' + '.join(map(str, self.real_summands))}")
        if self.predictions:
            lines.append(f"reason           {self.predictions.reason}")
        bad = [k for k, v in self.checks.items() if not v]
        lines.append("consistent       " + ("yes" if self.consistent else f"NO ({', '.join(bad) or 'verdict'})"))
        lines.extend(f"note             {x}" for x in self.notes)
        return "\n".join(lines)


def _verdict(orbits: int, seidel: bool, spec: Spectrum | None) -> str:
    if orbits == 3 and not seidel:
        return IRREDUCIBLE
    if orbits == 4 and seidel and spec is not None:
        return SPLITS_REAL
    if orbits == 4 and not seidel:
        return SPLITS_COMPLEX_ONLY
    return INCONSISTENT


def _projector_checks(E: SeidelMatrix, sp: Spectrum) -> tuple[bool, QuadMatrix, QuadMatrix]:
    P1, P2 = projector(E, sp, 1), projector(E, sp, 2)
    Em = QuadMatrix.from_seidel(E)
    ident = QuadMatrix.identity(E.n)
    ok = (
        P1 @ P1 == P1
        and P2 @ P2 == P2
        and Em @ P1 == P1.scale(sp.lambda1)
        and Em @ P2 == P2.scale(sp.lambda2)
        and P1 + P2 == ident
        and P1.trace() == sp.m1
        and P2.trace() == sp.m2
    )
    return ok, P1, P2


def analyse(
    gens: Sequence[SignedPerm],
    n: int,
    label: str,
    seed_sign: int = 1,
    max_n: int | None = None,
) -> ClassificationReport:
    """Pipeline for an arbitrary set of signed generators (no predictions)."""
    max_n = max_n_default() if max_n is None else max_n
    if n > max_n:
        raise BoundExceededError(f"n = {n} exceeds the bound {max_n}")
    if not is_two_transitive(gens, n):
        raise NotTwoTransitiveError(f"{label} is not 2-transitive on {n} points")
    rep = orbits_on_signed_pairs(gens, n)
    res = propagate(gens, n, seed_sign)
    report = ClassificationReport(
        group_label=label,
        n=n,
        two_transitive=True,
        orbit_report=rep,
        seidel_exists=res.exists,
        seidel=res.matrix,
        contradiction_certificate=res.certificate,
    )
    report.checks["orbits_in_3_4"] = rep.orbit_count_YxY in (3, 4)
    report.checks["orbit_split"] = rep.orbit_count_YxY == (
        rep.orbit_count_delta + rep.orbit_count_delta_prime + rep.orbit_count_nabla
    )
    if res.matrix is not None:
        mp = quadratic_minpoly(res.matrix)
        report.checks["two_eigenvalues"] = mp is not None
        if mp is not None:
            try:
                sp = eigen_data(mp[0], mp[1], n)
            except (NonIntegerMultiplicityError, DegenerateSpectrumError) as exc:
                report.checks["integral_multiplicities"] = False
                report.notes.append(str(exc))
            else:
                report.spectrum = sp
                report.equiangular = equiangular_params(sp)
                ok, _, _ = _projector_checks(res.matrix, sp)
                report.checks["projector_identities"] = ok
    report.verdict = _verdict(rep.orbit_count_YxY, res.exists, report.spectrum)
    return report


def _exchange_check(spec: GroupSpec, basis, E: SeidelMatrix, sp: Spectrum) -> bool:
    """Conjugating by the lift of diag(gamma, 1, ...) must swap the two projectors."""
    ctx = spec.ctx
    outer = lift(basis, diag(ctx, [ctx.primitive] + [ctx.one] * (spec.d - 1)))
    R = QuadMatrix.from_int(outer.matrix())
    Rt = QuadMatrix.from_int(outer.matrix().T)
    P1, P2 = projector(E, sp, 1), projector(E, sp, 2)
    return R @ P1 @ Rt == P2 and R @ P2 @ Rt == P1


def classify(
    spec: GroupSpec,
    seed_sign: int = 1,
    max_n: int | None = None,
    paley_check: bool = False,
) -> ClassificationReport:
    max_n = max_n_default() if max_n is None else max_n
    q, d = spec.ctx.q, spec.d
    n = (q**d - 1) // (q - 1)
    if n > max_n:
        raise BoundExceededError(f"n = {n} exceeds the bound {max_n}")
    basis = enum_points(spec.ctx, d)
    gens = [lift(basis, M) for M in spec.generators]
    report = analyse(gens, n, spec.label, seed_sign, max_n)
    pred = predict(spec, n)
    report.predictions = pred
    rep = report.orbit_report

    report.checks["transitive_on_y"] = rep.transitive_on_Y
    report.checks["orbits_match"] = rep.orbit_count_YxY == pred.orbits_yxy
    report.checks["nabla_match"] = rep.orbit_count_nabla == pred.orbits_nabla
    report.checks["seidel_match"] = report.seidel_exists == pred.seidel_exists
    report.checks["verdict_match"] = report.verdict == pred.verdict
    if pred.multiplicities is not None:
        report.checks["multiplicities_match"] = report.multiplicities == pred.multiplicities

    if report.spectrum is not None and d == 2:
        report.checks["eigenspaces_exchanged"] = _exchange_check(
            spec, basis, report.seidel, report.spectrum
        )
    if paley_check and report.seidel is not None and q % 4 == 1:
        if n <= PALEY_MATCH_MAX_N:
            report.checks["paley_match"] = paley_match(report.seidel, paley_conference(spec.ctx))
        else:
            report.notes.append(f"Paley check skipped: n = {n} > {PALEY_MATCH_MAX_N}")
    return report


def builtin_grid(max_q: int = 17, max_d: int = 3) -> list[tuple[str, int, int]]:
    """Every (family, d, q) with q an odd prime power <= max_q and 2 <= d <= max_d."""
    from .ffield import parse_prime_power

    qs = []
    for q in range(3, max_q + 1):
        try:
            parse_prime_power(q)
        except ValueError:
            continue
        qs.append(q)
    return [(fam, d, q) for fam in ("SL", "GLplus", "GL") for d in range(2, max_d + 1) for q in qs]


def seidel_for(spec: GroupSpec, seed_sign: int = 1):
    """Lift a built-in group and run propagation; returns the SynthesisResult."""
    basis = enum_points(spec.ctx, spec.d)
    gens = [lift(basis, M) for M in spec.generators]
    return propagate(gens, basis.n, seed_sign)


__all__ = [
    "ClassificationReport",
    "Predictions",
    "analyse",
    "builtin_grid",
    "classify",
    "predict",
    "seidel_for",
    "IRREDUCIBLE",
    "SPLITS_REAL",
    "SPLITS_COMPLEX_ONLY",
    "INCONSISTENT",
]
