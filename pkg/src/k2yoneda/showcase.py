"""The 13-generator monomial algebra A that is K2 while E(A) is not, and its checklist."""

from __future__ import annotations

from dataclasses import dataclass, field

from .bar import BarComplex, BarTensor, k2_low_degree_test
from .chains import betti_table, check_k2, classify, enumerate_chains, euler_product, s_sets
from .linalg import Field
from .presentation import MonomialPresentation, hilbert_coefficients, parse_presentation
from .yoneda import build_ext_algebra, ext_hilbert

EXAMPLE_TEXT = """\
generators: m n p q r s t u v w x y z
relation: m n n p
relation: n n p q r
relation: n p q r s
relation: p q r s t
relation: s t u
relation: t u v w x
relation: u v w x y
relation: v w x y y
relation: x y y z
"""

EXPECTED_S_SETS = [
    ["m", "n", "p", "q", "r", "s", "t", "u", "v", "w", "x", "y", "z"],
    ["mnn", "nnpq", "npqr", "pqrs", "st", "tuvw", "uvwx", "vwxy", "xyy"],
    ["pqr", "vw"],
    ["nn"],
    [],
]
EXPECTED_LEVEL_SIZES = [13, 9, 8, 4, 3, 1, 0]
EXPECTED_EXT_DIMS = [1, 13, 9, 8, 4, 3, 1]

# alpha, beta, gamma: duals of these relations
ALPHA, BETA, GAMMA = "nnpqr", "stu", "vwxyy"

HILBERT_TYPO_NOTE = (
    "published Hilbert series of E(A) reads 1+13t^2+9t^2+8t^3+4t^4+3t^5+t^6 (two t^2 terms); "
    "read as 1+13t+9t^2+8t^3+4t^4+3t^5+t^6 since E^1 has one basis element per generator"
)


def example_presentation() -> MonomialPresentation:
    return parse_presentation(EXAMPLE_TEXT, source="<built-in example>")


def is_example(p: MonomialPresentation) -> bool:
    return p == example_presentation()


@dataclass
class Check:
    name: str
    passed: bool
    detail: str

    def line(self) -> str:
        return f"[{'PASS' if self.passed else 'FAIL'}] {self.name}: {self.detail}"


@dataclass
class DemoReport:
    field: str
    checks: list[Check] = field(default_factory=list)
    warnings: list[str] = field(default_factory=list)

    @property
    def all_passed(self) -> bool:
        return all(c.passed for c in self.checks)

    def add(self, name: str, passed: bool, detail: str) -> None:
        self.checks.append(Check(name, bool(passed), detail))


def zeta(ext) -> BarTensor:
    """The 3-cycle  mbar.alpha (x) beta.gamma (x) zbar  in the bar complex of E(A)."""
    m, z = ext.letter("m"), ext.letter("z")
    alpha, beta, gamma = ext.relation(ALPHA), ext.relation(BETA), ext.relation(GAMMA)
    (ma,) = (m * alpha).terms
    (bg,) = (beta * gamma).terms
    (zz,) = z.terms
    return BarTensor({(ma, bg, zz): 1})


def run_demo(field_: Field | None = None, max_level: int = 32) -> DemoReport:
    """Run the whole pipeline on the built-in example; raises ValueError if the
    chain enumeration is truncated at ``max_level``."""
    field_ = field_ or Field()
    report = DemoReport(str(field_), warnings=[HILBERT_TYPO_NOTE])
    p = example_presentation()
    fmt = p.format_word

    sets = [[fmt(w) for w in s] for s in s_sets(p)]
    report.add("S-sets", sets == EXPECTED_S_SETS, "; ".join(f"S{k + 1}={{{', '.join(s)}}}" for k, s in enumerate(sets)))

    cert = check_k2(p)
    reasons = sorted({c.reason for c in cert.checks})
    report.add(
        "A is K2",
        cert.certified and set(reasons) <= {"deg1", "product-in-R"},
        f"{cert.verdict}; {len(cert.checks)} checks, reasons {reasons}, {len(cert.violations)} violations",
    )
    st_check = [c for c in cert.checks if fmt(c.b) == "st" and fmt(c.a) == "pqr"]
    report.add(
        "pair (b=st, a=pqr)",
        len(st_check) == 1 and st_check[0].reason == "product-in-R",
        "pqrst is a relation" if st_check else "pair missing",
    )

    chains = enumerate_chains(p, max_level)
    sizes = chains.sizes()
    shown = sizes[: len(EXPECTED_LEVEL_SIZES)]
    report.add("chain level sizes", shown == EXPECTED_LEVEL_SIZES, ", ".join(map(str, shown)))
    if chains.truncated:
        raise ValueError(f"chains truncated at level {max_level}: the Ext algebra cannot be built")

    bt = betti_table(chains)
    report.add("A is neither Koszul nor D-Koszul", classify(bt).kind == "neither", str(classify(bt)))
    euler = euler_product(bt, hilbert_coefficients(p, 15))
    report.add("Euler characteristic through t^15", euler == [1] + [0] * 15, " ".join(map(str, euler)))

    ext = build_ext_algebra(chains)
    alg = ext.algebra
    dims = ext_hilbert(alg)
    report.add("E(A) dimensions", dims == EXPECTED_EXT_DIMS, f"{dims}, total {sum(dims)}")

    m, z = ext.letter("m"), ext.letter("z")
    alpha, beta, gamma = ext.relation(ALPHA), ext.relation(BETA), ext.relation(GAMMA)
    facts = [
        ("mbar*alpha", m * alpha, True),
        ("gamma*zbar", gamma * z, True),
        ("beta*gamma", beta * gamma, True),
        ("mbar*alpha*beta", m * alpha * beta, False),
        ("beta*gamma*zbar", beta * gamma * z, False),
        ("mbar*alpha*beta*gamma", m * alpha * beta * gamma, False),
    ]
    ok = all(bool(x) == want for _, x, want in facts)
    report.add(
        "products in E(A)",
        ok,
        ", ".join(f"{name} {'!= 0' if x else '= 0'}" for name, x, _ in facts),
    )

    bar = BarComplex(alg, field_)
    z3 = zeta(ext)
    d = bar.tensor_degree(next(iter(z3.terms)))
    cycle = not bar.apply_differential(z3)
    not_boundary = not bar.is_boundary(z3, 3, d)
    cls = bar.homology_class(z3, 3, d)
    delta = bar.coproduct_image(BarTensor({t: field_(c) for t, c in z3.terms.items()}))
    report.add("zeta is a cycle", cycle, f"zeta = {z3.format(alg, field_)} in bidegree (3, {d})")
    report.add("zeta is not a boundary", not_boundary, "not in the image of the degree-4 differential")
    report.add("class of zeta is nonzero", bool(cls), f"{len(cls)} nonzero homology coordinates")
    report.add("reduced coproduct of zeta vanishes", not delta, "Delta(zeta) = 0 in Tor2(x)Tor1 + Tor1(x)Tor2")

    summary = k2_low_degree_test(alg, field_=field_, bar=bar)
    first = summary.first_failure_degree
    report.add(
        "E(A) is not K2",
        summary.verdict == "new-generators-found" and first == d,
        f"{summary.verdict}; coproduct kernel on Tor3 by degree {summary.kernel_dims}; first failure at internal degree {first}",
    )
    report.add(
        "Tor1 of E(A) in degrees {1, 2}",
        summary.tor_by_degree(1) == {1: 13, 2: 9},
        f"{summary.tor_by_degree(1)}",
    )
    return report
