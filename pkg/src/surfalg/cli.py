"""Batch verification runner with machine-readable reports.

Each suite maps one body of checks to executable certificates at the
configured genus and truncation degree.  Reports are deterministic for a
fixed (config, seed) apart from the runtime_ms and version fields, which is
what the golden-file regression relies on.
"""

from __future__ import annotations

import argparse
import itertools
import json
import random
import sys
import time
from dataclasses import dataclass, field
from math import comb

from . import __version__, intlinalg, surface, torelli
from .enveloping import (
    center_in_degree_assoc,
    enveloping_algebra,
    hilbert_dimension,
    pbw_consistency,
)
from .errors import ResourceLimitExceeded
from .intlinalg import IntMatrix
from .nilpotent import (
    GroupWord,
    center_of_quotient,
    equal_in_quotient,
    expand,
    graded_rank_certificate,
    surface_relator,
    verify_identity_viii,
)
from .symplectic import (
    SymplecticSpace,
    commutant_dimension,
    contraction_matrix,
    johnson_image,
    lambda3_action,
    sp_generators,
    summand_correspondence_roundtrip,
)

SUITE_NAMES = (
    "lie-center",
    "enveloping",
    "nilpotent",
    "sp-decomposition",
    "johnson-image",
    "torelli-h1",
    "lemma-summand",
    "identity-viii",
    "index-formula",
)


class ConfigError(ValueError):
    """Invalid run configuration."""


class NonDivisibleError(ValueError):
    """The Euler characteristics do not give an integral, positive index."""


def euler_index(chi_sub: int, chi_ambient: int) -> int:
    """Subgroup index forced by multiplicativity of the Euler characteristic.

    A degree-n cover multiplies the characteristic by n, so the index is the
    unique positive integer with index * chi_sub == chi_ambient; anything
    else is an error.
    """
    if chi_sub == 0:
        raise ValueError("zero subgroup characteristic")
    if chi_sub > 0:
        raise ValueError("subgroup Euler characteristic must be negative")
    if chi_ambient % chi_sub != 0:
        raise NonDivisibleError(f"{chi_ambient} is not a multiple of {chi_sub}")
    index = chi_ambient // chi_sub
    if index <= 0:
        raise NonDivisibleError(f"index {index} is not a positive integer")
    return index


@dataclass(frozen=True)
class RunConfig:
    genus: int = 3
    max_degree: int = 4
    suites: tuple[str, ...] = SUITE_NAMES
    report_format: str = "json"
    seed: int = 20240
    trials: int = 1000

    def __post_init__(self):
        if not self.suites:
            raise ConfigError("at least one suite is required")
        unknown = [s for s in self.suites if s not in SUITE_NAMES]
        if unknown:
            raise ConfigError(f"unknown suites: {', '.join(unknown)}")
        if self.genus < 2:
            raise ConfigError("genus must be at least 2")
        if self.max_degree < 2:
            raise ConfigError("max degree must be at least 2")
        if self.report_format not in ("json", "text"):
            raise ConfigError(f"unknown report format {self.report_format!r}")
        if self.trials < 1:
            raise ConfigError("trials must be positive")

    def to_dict(self) -> dict:
        return {
            "genus": self.genus,
            "max_degree": self.max_degree,
            "suites": list(self.suites),
            "report_format": self.report_format,
            "seed": self.seed,
            "trials": self.trials,
        }


@dataclass
class CheckResult:
    name: str
    paper_anchor: str
    status: str  # pass | fail | skipped
    expected: object
    actual: object
    runtime_ms: int

    def to_dict(self) -> dict:
        return {
            "name": self.name,
            "paper_anchor": self.paper_anchor,
            "status": self.status,
            "expected": _jsonable(self.expected),
            "actual": _jsonable(self.actual),
            "runtime_ms": self.runtime_ms,
        }


@dataclass
class Report:
    config: RunConfig
    version: str
    checks: list[CheckResult] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return all(c.status != "fail" for c in self.checks)

    def to_dict(self) -> dict:
        return {
            "config": self.config.to_dict(),
            "version": self.version,
            "checks": [c.to_dict() for c in self.checks],
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2)

    def to_text(self) -> str:
        lines = [f"surfalg {self.version}  genus={self.config.genus} K={self.config.max_degree}"]
        for c in self.checks:
            lines.append(
                f"[{c.status.upper():7}] {c.name} ({c.paper_anchor}) "
                f"expected={_jsonable(c.expected)!r} actual={_jsonable(c.actual)!r} "
                f"[{c.runtime_ms} ms]"
            )
        tally = {"pass": 0, "fail": 0, "skipped": 0}
        for c in self.checks:
            tally[c.status] += 1
        lines.append(
            f"{tally['pass']} passed, {tally['fail']} failed, {tally['skipped']} skipped"
        )
        return "\n".join(lines)


def _jsonable(value):
    if isinstance(value, (list, tuple)):
        return [_jsonable(v) for v in value]
    if isinstance(value, dict):
        return {str(k): _jsonable(v) for k, v in value.items()}
    if isinstance(value, (bool, int, str)) or value is None:
        return value
    return str(value)


class _Session:
    """Shared state for one run: config, lazily built algebra, seeded rngs."""

    def __init__(self, config: RunConfig):
        self.config = config
        self._surface = None

    @property
    def surface_algebra(self):
        if self._surface is None:
            self._surface = surface.build(self.config.genus, self.config.max_degree)
        return self._surface

    def rng(self, suite: str) -> random.Random:
        # string seeding is deterministic across processes and platforms
        return random.Random(f"{self.config.seed}:{suite}")


def _run_check(checks: list, name: str, anchor: str, func) -> None:
    start = time.perf_counter()
    try:
        expected, actual = func()
        status = "pass" if _jsonable(expected) == _jsonable(actual) else "fail"
    except ResourceLimitExceeded as exc:
        expected, actual, status = None, f"skipped: {exc}", "skipped"
    ms = int((time.perf_counter() - start) * 1000)
    checks.append(CheckResult(name, anchor, status, expected, actual, ms))


# -- suites -------------------------------------------------------------------


def _suite_lie_center(s: _Session) -> list[CheckResult]:
    cfg = s.config
    checks: list[CheckResult] = []

    def ranks():
        alg = s.surface_algebra
        # independent series-peel oracle for the expected ranks
        target = [hilbert_dimension(cfg.genus, d) for d in range(cfg.max_degree + 1)]
        expected = []
        partial = [1] + [0] * cfg.max_degree
        for k in range(1, cfg.max_degree + 1):
            r = target[k] - partial[k]
            expected.append(r)
            factor = [0] * (cfg.max_degree + 1)
            j = 0
            while j * k <= cfg.max_degree:
                num, den = 1, 1
                for t in range(1, j + 1):
                    num *= r - 1 + t
                    den *= t
                factor[j * k] = num // den
                j += 1
            partial = [
                sum(partial[i] * factor[m - i] for i in range(m + 1))
                for m in range(cfg.max_degree + 1)
            ]
        return expected, list(alg.ranks())

    def pbw():
        rep = pbw_consistency(s.surface_algebra)
        return list(rep.word_side), list(rep.graded_side)

    def center():
        alg = s.surface_algebra
        dims = [len(surface.center_in_degree(alg, d)) for d in range(1, cfg.max_degree)]
        return [0] * (cfg.max_degree - 1), dims

    _run_check(checks, "surface-ranks", "labute-presentation", ranks)
    _run_check(checks, "pbw-hilbert-identity", "graded-enveloping-series", pbw)
    _run_check(checks, "graded-center-empty", "lcs-center-equality", center)
    return checks


def _suite_enveloping(s: _Session) -> list[CheckResult]:
    cfg = s.config
    g = cfg.genus
    checks: list[CheckResult] = []

    def hilbert():
        alg = enveloping_algebra(g)
        lead0, lead1 = alg.lead
        expected, actual = [], []
        for d in range(5):
            count = 0
            for w in itertools.product(range(2 * g), repeat=d):
                if not any(w[i] == lead0 and w[i + 1] == lead1 for i in range(d - 1)):
                    count += 1
            expected.append(count)
            actual.append(hilbert_dimension(g, d))
        return expected, actual

    def assoc_center():
        dims = [len(center_in_degree_assoc(g, d)) for d in range(1, 5)]
        return [0, 0, 0, 0], dims

    def homomorphism():
        rng = s.rng("enveloping")
        alg = enveloping_algebra(g)
        trials = min(cfg.trials, 100)
        good = 0
        for _ in range(trials):
            def raw():
                return {
                    tuple(rng.randrange(2 * g) for _ in range(rng.randint(0, 3))): rng.randint(-2, 2)
                    for _ in range(3)
                }
            p, q = raw(), raw()
            prod = {}
            for wa, ca in p.items():
                for wb, cb in q.items():
                    prod[wa + wb] = prod.get(wa + wb, 0) + ca * cb
            if alg.poly(prod) == alg.poly(p) * alg.poly(q):
                good += 1
        return trials, good

    _run_check(checks, "hilbert-brute-force", "enveloping-hilbert-series", hilbert)
    _run_check(checks, "assoc-center-empty", "enveloping-scalar-center", assoc_center)
    _run_check(checks, "reduction-homomorphism", "confluent-rewriting", homomorphism)
    return checks


def _suite_nilpotent(s: _Session) -> list[CheckResult]:
    cfg = s.config
    g = cfg.genus
    checks: list[CheckResult] = []

    def keystone():
        results = [expand(surface_relator(g), k).is_one() for k in range(1, cfg.max_degree + 1)]
        return [True] * cfg.max_degree, results

    def multiplicative():
        rng = s.rng("nilpotent")
        trials = min(cfg.trials, 60)
        good = 0
        for _ in range(trials):
            u = GroupWord(g, [rng.choice([1, -1]) * rng.randint(1, 2 * g) for _ in range(rng.randint(0, 6))])
            v = GroupWord(g, [rng.choice([1, -1]) * rng.randint(1, 2 * g) for _ in range(rng.randint(0, 6))])
            k = rng.randint(1, cfg.max_degree)
            if expand(u * v, k) == expand(u, k) * expand(v, k):
                good += 1
        return trials, good

    def quotient_centers():
        ranks = {d: s.surface_algebra.rank(d) for d in range(1, cfg.max_degree + 1)}
        expected, actual = [], []
        for k in range(2, cfg.max_degree):
            rep = center_of_quotient(g, k, layer_ranks=ranks)
            expected.append({"class": k, "central_layers": [k]})
            actual.append(
                {
                    "class": k,
                    "central_layers": [v.layer for v in rep.layers if v.centralizes],
                }
            )
        return expected, actual

    def rank_certificates():
        expected, actual = [], []
        for k in range(1, cfg.max_degree):
            cert = graded_rank_certificate(g, k, expected_rank=s.surface_algebra.rank(k))
            expected.append({"level": k, "rank": s.surface_algebra.rank(k)})
            actual.append({"level": k, "rank": cert.rank})
        return expected, actual

    def abelianization_sanity():
        u, v = GroupWord(g, (1, 2)), GroupWord(g, (2, 1))
        return [True, False], [equal_in_quotient(u, v, 1), equal_in_quotient(u, v, 2)]

    _run_check(checks, "relator-keystone", "magnus-relator-vanishing", keystone)
    _run_check(checks, "expand-multiplicative", "magnus-homomorphism", multiplicative)
    _run_check(checks, "quotient-center-layers", "nilpotent-quotient-center", quotient_centers)
    _run_check(checks, "expansion-rank-certificates", "graded-separation", rank_certificates)
    _run_check(checks, "abelianization-sanity", "magnus-degree-one", abelianization_sanity)
    return checks


def _suite_sp_decomposition(s: _Session) -> list[CheckResult]:
    cfg = s.config
    g = cfg.genus
    checks: list[CheckResult] = []
    space = SymplecticSpace(g)

    def form_preserved():
        j = space.form_matrix()
        gens = sp_generators(g)
        ok = sum(1 for gen in gens if gen.matrix.transpose() @ j @ gen.matrix == j)
        return len(gens), ok

    def dims():
        c = contraction_matrix(space)
        return (
            {"cube_dim": comb(2 * g, 3), "kernel_dim": comb(2 * g, 3) - 2 * g},
            {"cube_dim": c.cols, "kernel_dim": intlinalg.kernel(c).rows},
        )

    def equivariance():
        c = contraction_matrix(space)
        gens = sp_generators(g)
        matrix_ok = sum(1 for gen in gens if c @ lambda3_action(gen) == gen.matrix @ c)
        rng = s.rng("sp-decomposition")
        n = comb(2 * g, 3)
        trials = cfg.trials
        vec_ok = 0
        for _ in range(trials):
            gen = rng.choice(gens)
            v = IntMatrix([[rng.randint(-5, 5) for _ in range(n)]]).transpose()
            lhs = c @ (lambda3_action(gen) @ v)
            rhs = gen.matrix @ (c @ v)
            if lhs == rhs:
                vec_ok += 1
        return (
            {"generators": len(gens), "vector_trials": trials},
            {"generators": matrix_ok, "vector_trials": vec_ok},
        )

    def commutant():
        if g < 3:
            raise ResourceLimitExceeded("uniqueness certificate is stated for genus >= 3")
        return 2, commutant_dimension(g)

    _run_check(checks, "generators-preserve-form", "symplectic-generators", form_preserved)
    _run_check(checks, "cube-decomposition-dims", "exterior-cube-splitting", dims)
    _run_check(checks, "contraction-equivariance", "equivariant-contraction", equivariance)
    _run_check(checks, "commutant-dimension", "invariant-subspace-uniqueness", commutant)
    return checks


def _suite_johnson_image(s: _Session) -> list[CheckResult]:
    g = s.config.genus
    checks: list[CheckResult] = []

    def rank_check():
        return 2 * g, intlinalg.rank(johnson_image(g))

    def unit_factors():
        factors = intlinalg.snf(johnson_image(g)).nonzero_factors
        return [1] * 2 * g, list(factors)

    def summand():
        return True, intlinalg.is_direct_summand(johnson_image(g), comb(2 * g, 3))

    _run_check(checks, "johnson-rank", "point-push-johnson-image", rank_check)
    _run_check(checks, "johnson-unit-factors", "partial-basis", unit_factors)
    _run_check(checks, "johnson-direct-summand", "partial-basis", summand)
    return checks


def _suite_torelli_h1(s: _Session) -> list[CheckResult]:
    g = s.config.genus
    checks: list[CheckResult] = []

    def describe(p):
        return {
            "free_rank": p.invariants.free_rank,
            "torsion_exponent": len(p.invariants.torsion),
            "torsion_orders": sorted(set(p.invariants.torsion)),
            "q_reconstructed": p.q_reconstructed,
            "torsion_exponent_without_constant_convention": p.torsion_exponent_without_constant,
        }

    def d1():
        got = torelli.pullback_d1(g)
        expected = {
            "free_rank": comb(2 * g, 3),
            "torsion_exponent": torelli.bool_dimension(g, 2),
            "torsion_orders": [2],
            "q_reconstructed": True,
            "torsion_exponent_without_constant_convention": torelli.bool_dimension(g, 2) - 1,
        }
        return expected, describe(got)

    def d3():
        got = torelli.pullback_d3(g)
        expected = {
            "free_rank": comb(2 * g, 3),
            "torsion_exponent": torelli.bool_dimension(g, 2) - 1,
            "torsion_orders": [2],
            "q_reconstructed": True,
            "torsion_exponent_without_constant_convention": torelli.bool_dimension(g, 2) - 2,
        }
        return expected, describe(got)

    def q_props():
        a = torelli.element_a(g)
        return (
            {"q_surjective": True, "a_nonzero": True, "a_killed_by_q": True, "projection_onto_cube": True},
            {
                "q_surjective": torelli.q_surjective(g),
                "a_nonzero": not a.is_zero(),
                "a_killed_by_q": all(x == 0 for x in torelli.q_map(a)),
                "projection_onto_cube": torelli.projection_to_cube_surjective(g),
            },
        )

    _run_check(checks, "pullback-d1-invariants", "torelli-abelianization-with-boundary", d1)
    _run_check(checks, "pullback-d3-invariants", "torelli-abelianization-closed", d3)
    _run_check(checks, "boolean-q-properties", "birman-craggs-johnson", q_props)
    return checks


def _suite_lemma_summand(s: _Session) -> list[CheckResult]:
    cfg = s.config
    g = cfg.genus
    checks: list[CheckResult] = []

    def johnson_roundtrip():
        rep = summand_correspondence_roundtrip(johnson_image(g), g)
        return (
            {"invariant": True, "summand": True, "roundtrip": True},
            {"invariant": rep.invariant, "summand": rep.summand, "roundtrip": bool(rep.roundtrip_holds)},
        )

    def random_roundtrips():
        rng = s.rng("lemma-summand-roundtrip")
        base = johnson_image(g)
        n = 2 * g
        good = 0
        trials = 100
        for _ in range(trials):
            u = IntMatrix.identity(n).to_array()
            for _ in range(3 * n):
                i, j = rng.randrange(n), rng.randrange(n)
                if i != j:
                    u[i, :] += rng.randint(-2, 2) * u[j, :]
            changed = IntMatrix.from_array(u) @ base
            if bool(summand_correspondence_roundtrip(changed, g)):
                good += 1
        return trials, good

    def retract_transfer():
        rng = s.rng("lemma-summand-transfer")
        trials = cfg.trials
        counterexamples = 0
        composite_hits = 0
        for _ in range(trials):
            d = rng.randint(1, 3)
            n = d + rng.randint(1, 3)
            l1 = IntMatrix([[rng.randint(-3, 3) for _ in range(d)] for _ in range(n)])
            l3 = IntMatrix([[rng.randint(-3, 3) for _ in range(n)] for _ in range(n)])
            verdict = intlinalg.verify_summand_transfer(l1, l3)
            if verdict.composite_gives_summand:
                composite_hits += 1
                if not verdict.factor_gives_summand:
                    counterexamples += 1
        if composite_hits == 0:
            raise ResourceLimitExceeded("no trial satisfied the hypothesis")
        return (
            {"counterexamples": 0, "hypothesis_nonvacuous": True},
            {"counterexamples": counterexamples, "hypothesis_nonvacuous": composite_hits > 0},
        )

    _run_check(checks, "johnson-summand-roundtrip", "rational-integral-correspondence", johnson_roundtrip)
    _run_check(checks, "random-summand-roundtrips", "rational-integral-correspondence", random_roundtrips)
    _run_check(checks, "retract-transfer-property", "split-injection-transfer", retract_transfer)
    return checks


def _suite_identity_viii(s: _Session) -> list[CheckResult]:
    cfg = s.config
    g = cfg.genus
    checks: list[CheckResult] = []

    def edge_cases():
        gw, n = GroupWord(g, (1, 2)), GroupWord(g, (3,))
        return (
            [True, True],
            [
                verify_identity_viii(GroupWord(g), gw, n),
                verify_identity_viii(GroupWord(g, (1,)), gw, GroupWord(g)),
            ],
        )

    def random_triples():
        rng = s.rng("identity-viii")
        trials = cfg.trials
        good = 0
        for _ in range(trials):
            p, gw, n = (
                GroupWord(g, [rng.choice([1, -1]) * rng.randint(1, 2 * g) for _ in range(rng.randint(0, 8))])
                for _ in range(3)
            )
            if verify_identity_viii(p, gw, n):
                good += 1
        return trials, good

    _run_check(checks, "identity-viii-edge-cases", "commutator-rearrangement", edge_cases)
    _run_check(checks, "identity-viii-random", "commutator-rearrangement", random_triples)
    return checks


def _suite_index_formula(s: _Session) -> list[CheckResult]:
    checks: list[CheckResult] = []

    def equal_characteristics():
        chi = 2 - 2 * s.config.genus
        return 1, euler_index(chi, chi)

    def proper_multiple():
        return 3, euler_index(-2, -6)

    def non_divisible():
        try:
            euler_index(-4, -6)
            return "error", "no error"
        except NonDivisibleError:
            return "error", "error"

    _run_check(checks, "euler-index-equal", "euler-characteristic-index", equal_characteristics)
    _run_check(checks, "euler-index-multiple", "euler-characteristic-index", proper_multiple)
    _run_check(checks, "euler-index-nondivisible", "euler-characteristic-index", non_divisible)
    return checks


_SUITES = {
    "lie-center": _suite_lie_center,
    "enveloping": _suite_enveloping,
    "nilpotent": _suite_nilpotent,
    "sp-decomposition": _suite_sp_decomposition,
    "johnson-image": _suite_johnson_image,
    "torelli-h1": _suite_torelli_h1,
    "lemma-summand": _suite_lemma_summand,
    "identity-viii": _suite_identity_viii,
    "index-formula": _suite_index_formula,
}


def run(config: RunConfig) -> Report:
    """Execute the configured suites; deterministic given (config, seed)."""
    session = _Session(config)
    report = Report(config=config, version=__version__)
    for suite in config.suites:
        report.checks.extend(_SUITES[suite](session))
    return report


def main(argv: list[str] | None = None) -> int:
    parser = argparse.ArgumentParser(
        prog="surfalg",
        description="Exact verification suites for surface-group filtration algebra.",
    )
    parser.add_argument("--genus", type=int, default=3)
    parser.add_argument("--max-degree", type=int, default=4)
    parser.add_argument(
        "--suite",
        action="append",
        default=None,
        help="suite name, repeatable (default: all); comma-separated lists accepted",
    )
    parser.add_argument("--report", choices=("json", "text"), default="json")
    parser.add_argument("--seed", type=int, default=20240)
    parser.add_argument("--trials", type=int, default=1000)
    parser.add_argument("--out", default=None, help="write the report to this path")
    args = parser.parse_args(argv)

    suites = SUITE_NAMES
    if args.suite:
        names: list[str] = []
        for chunk in args.suite:
            names.extend(x.strip() for x in chunk.split(",") if x.strip())
        suites = tuple(names)
    try:
        config = RunConfig(
            genus=args.genus,
            max_degree=args.max_degree,
            suites=suites,
            report_format=args.report,
            seed=args.seed,
            trials=args.trials,
        )
    except ConfigError as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return 2

    report = run(config)
    text = report.to_json() if config.report_format == "json" else report.to_text()
    if args.out:
        with open(args.out, "w") as fh:
            fh.write(text + "\n")
    else:
        print(text)
    return 0 if report.passed else 1


if __name__ == "__main__":
    sys.exit(main())
