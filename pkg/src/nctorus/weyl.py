"""Normal-ordered monomials in the unitaries U1, U2, V1, V2.

A monomial is ``exp(2 pi i phase) V1^a1 U1^b1 V2^a2 U2^b2``; the phase is an
exact quadratic number kept in ``[0, 1)``.  Products are normal-ordered with
the relations ``Vi Uj = e(theta_ij) Uj Vi`` where
``theta_11, theta_12, theta_21, theta_22 = t1, t2, t3, t4`` and the U's (and
the V's) commute among themselves.
"""

from __future__ import annotations

import re
from dataclasses import dataclass

from . import kernels
from .exactfield import QuadNum
from .hyperbolic import HypMatrix, Mat2Z
from .torusparams import ThetaVector, integer_coords, theta_closed_form, theta_from_eigenvectors

__all__ = [
    "WeylElement",
    "MalformedWordError",
    "GENERATORS",
    "wedge",
    "rho_exponent",
    "weyl_mul",
    "normal_order",
    "parse_word",
    "commutator",
    "commutator_check",
    "nondegeneracy_scan",
    "substitution_check",
    "relation_table",
    "ruelle_presentation",
    "ruelle_automorphism_check",
]

Vec4 = tuple[int, int, int, int]

# exponent slot of each generator in (a1, b1, a2, b2)
GENERATORS: dict[str, Vec4] = {
    "V1": (1, 0, 0, 0),
    "U1": (0, 1, 0, 0),
    "V2": (0, 0, 1, 0),
    "U2": (0, 0, 0, 1),
}

# the six defining pairs, oriented so that X Y = e(phase) Y X
BASIC_PAIRS = [("V1", "U1"), ("V1", "U2"), ("V2", "U1"), ("V2", "U2"), ("U1", "U2"), ("V1", "V2")]


class MalformedWordError(ValueError):
    pass


@dataclass(frozen=True)
class WeylElement:
    phase: QuadNum
    exp: Vec4

    def __post_init__(self) -> None:
        object.__setattr__(self, "phase", QuadNum.coerce(self.phase).mod_one())
        object.__setattr__(self, "exp", tuple(int(x) for x in self.exp))
        if len(self.exp) != 4:
            raise ValueError("exponent vector must have four entries")

    @classmethod
    def identity(cls) -> WeylElement:
        return cls(QuadNum(0), (0, 0, 0, 0))

    @classmethod
    def monomial(cls, g: Vec4) -> WeylElement:
        return cls(QuadNum(0), tuple(g))

    @classmethod
    def generator(cls, name: str) -> WeylElement:
        try:
            return cls.monomial(GENERATORS[name])
        except KeyError:
            raise MalformedWordError(f"unknown generator {name!r}") from None

    def __str__(self) -> str:
        names = ("V1", "U1", "V2", "U2")
        body = " ".join(
            n if e == 1 else f"{n}^{e}" for n, e in zip(names, self.exp) if e
        ) or "1"
        return body if not self.phase else f"e({self.phase}) {body}"


def wedge(g: Vec4, h: Vec4) -> Vec4:
    a1, b1, a2, b2 = g
    c1, d1, c2, d2 = h
    return (a1 * d1 - b1 * c1, a1 * d2 - b2 * c1, a2 * d1 - b1 * c2, a2 * d2 - b2 * c2)


def _dot(theta: ThetaVector, w) -> QuadNum:
    t1, t2, t3, t4 = theta.values
    return t1 * w[0] + t2 * w[1] + t3 * w[2] + t4 * w[3]


def rho_exponent(theta: ThetaVector, g: Vec4, h: Vec4) -> QuadNum:
    return _dot(theta, wedge(g, h)).mod_one()


def ordering_phase(theta: ThetaVector, g: Vec4, h: Vec4) -> QuadNum:
    """Phase picked up when ``u_g u_h`` is rewritten as ``u_{g+h}`` (not reduced)."""
    _, b1, a2, b2 = g
    c1, d1, c2, _ = h
    # U2^b2 past V1^c1, U1^b1 past V1^c1, V2^a2 past U1^d1, U2^b2 past V2^c2
    return _dot(theta, (-b1 * c1, -b2 * c1, a2 * d1, -b2 * c2))


def weyl_mul(x: WeylElement, y: WeylElement, theta: ThetaVector) -> WeylElement:
    exp = tuple(p + q for p, q in zip(x.exp, y.exp))
    return WeylElement(x.phase + y.phase + ordering_phase(theta, x.exp, y.exp), exp)


def weyl_inverse(x: WeylElement, theta: ThetaVector) -> WeylElement:
    neg = tuple(-e for e in x.exp)
    return WeylElement(-x.phase - ordering_phase(theta, x.exp, neg), neg)


def commutator(x: WeylElement, y: WeylElement, theta: ThetaVector) -> WeylElement:
    """``x y x^-1 y^-1``."""
    xy = weyl_mul(x, y, theta)
    return weyl_mul(
        weyl_mul(xy, weyl_inverse(x, theta), theta), weyl_inverse(y, theta), theta
    )


def commutator_check(theta: ThetaVector, g: Vec4, h: Vec4) -> bool:
    c = commutator(WeylElement.monomial(g), WeylElement.monomial(h), theta)
    return c.exp == (0, 0, 0, 0) and c.phase == rho_exponent(theta, g, h)


_LETTER = re.compile(r"\s*(U1|U2|V1|V2|W)(?:\^\{?([+-]?\d+)\}?)?\s*\*?")


def parse_word(text: str) -> list[tuple[str, int]]:
    """Parse ``"U1 U2^2"`` (or ``U1*U2^-1``) into ``[(name, exponent), ...]``."""
    pos, word = 0, []
    text = text.strip()
    if text in ("", "1"):
        return []
    while pos < len(text):
        match = _LETTER.match(text, pos)
        if match is None or match.end() == pos:
            raise MalformedWordError(f"cannot parse word {text!r} at offset {pos}")
        word.append((match.group(1), int(match.group(2) or 1)))
        pos = match.end()
    return word


def normal_order(word, theta: ThetaVector) -> WeylElement:
    """Normal-order a generator word given as text or ``[(name, exponent), ...]``."""
    if isinstance(word, str):
        word = parse_word(word)
    result = WeylElement.identity()
    for name, e in word:
        if name == "W":
            raise MalformedWordError("W has no normal form among the four-torus monomials")
        if name not in GENERATORS:
            raise MalformedWordError(f"unknown generator {name!r}")
        if not isinstance(e, int) or e == 0:
            raise MalformedWordError(f"exponent of {name} must be a nonzero integer")
        g = tuple(e * x for x in GENERATORS[name])
        result = weyl_mul(result, WeylElement.monomial(g), theta)
    return result


def relation_table(theta: ThetaVector, images: dict | None = None) -> dict[tuple[str, str], QuadNum]:
    """Commutation phase of every pair of (images of) the four generators."""
    images = images or {name: [(name, 1)] for name in GENERATORS}
    elems = {name: normal_order(images[name], theta) for name in GENERATORS}
    table = {}
    for x, y in BASIC_PAIRS:
        table[(x, y)] = commutator(elems[x], elems[y], theta).phase
    return table


def substitution_check(theta: ThetaVector, images: dict, expected) -> bool:
    """Do the images satisfy the expected commutation phases?

    ``expected`` is a mapping or a list of ``((X, Y), phase)`` meaning
    ``X Y = e(phase) Y X`` for the images of X and Y.  Any of the six basic
    pairs not mentioned is expected to commute.
    """
    missing = set(GENERATORS) - set(images)
    if missing:
        raise MalformedWordError(f"no image given for {sorted(missing)}")
    expected = dict(expected)
    elems = {name: normal_order(images[name], theta) for name in GENERATORS}
    pairs = set(BASIC_PAIRS) | set(expected)
    for x, y in pairs:
        want = QuadNum.coerce(expected.get((x, y), 0)).mod_one()
        if commutator(elems[x], elems[y], theta).phase != want:
            return False
    return True


def nondegeneracy_scan(theta: ThetaVector, bound: int) -> list[Vec4]:
    """All ``g`` with ``|g|_inf <= bound`` pairing integrally with every basis vector."""
    basis = [tuple(int(i == j) for j in range(4)) for i in range(4)]
    # row i: coefficients of g_k in theta . (g ^ e_i)
    coeffs = [[_dot(theta, wedge(ek, ei)) for ek in basis] for ei in basis]
    den, P, Q = integer_coords([c for row in coeffs for c in row])
    P_rows = [P[4 * i : 4 * i + 4] for i in range(4)]
    Q_rows = [Q[4 * i : 4 * i + 4] for i in range(4)]
    return [tuple(g) for g in kernels.lattice_zero_scan(P_rows, Q_rows, den, bound)]


# -- Ruelle algebra ---------------------------------------------------------

def w_images(A: Mat2Z, reading: str = "corrected") -> dict[str, list[tuple[str, int]]]:
    """Images of the generators under conjugation by W.

    ``"corrected"`` sends V-exponents through ``det(A) * adj(A)``; ``"literal"``
    uses U2 in the V-images exactly as the five-unitary relations are usually
    printed.  Only the corrected reading preserves the commutation phases.
    """
    if reading not in ("corrected", "literal"):
        raise ValueError(f"unknown reading {reading!r}")
    a, b, c, d = A.a, A.b, A.c, A.d
    s = A.det
    second = "V2" if reading == "corrected" else "U2"

    def word(*letters):
        return [(n, e) for n, e in letters if e]

    return {
        "U1": word(("U1", a), ("U2", b)),
        "U2": word(("U1", c), ("U2", d)),
        "V1": word(("V1", s * d), (second, -s * c)),
        "V2": word(("V1", -s * b), (second, s * a)),
    }


def _check_matrix_identity(A: Mat2Z, theta: ThetaVector) -> bool:
    t1, t2, t3, t4 = theta.values
    Ainv_t = A.inverse().transpose()
    At = A.transpose()
    # Q = [[t1, t2], [t3, t4]]; compute (A^-1)^T Q A^T entrywise
    QAt = [
        [t1 * At.a + t2 * At.c, t1 * At.b + t2 * At.d],
        [t3 * At.a + t4 * At.c, t3 * At.b + t4 * At.d],
    ]
    res = [
        [Ainv_t.a * QAt[0][0] + Ainv_t.b * QAt[1][0], Ainv_t.a * QAt[0][1] + Ainv_t.b * QAt[1][1]],
        [Ainv_t.c * QAt[0][0] + Ainv_t.d * QAt[1][0], Ainv_t.c * QAt[0][1] + Ainv_t.d * QAt[1][1]],
    ]
    return res == [[t1, t2], [t3, t4]]


def ruelle_automorphism_check(H: HypMatrix, theta: ThetaVector | None = None) -> bool:
    """Exact test of ``(A^-1)^T Q A^T == Q`` for ``Q = [[t1, t2], [t3, t4]]``."""
    theta = theta if theta is not None else theta_from_eigenvectors(H)
    return _check_matrix_identity(H.mat, theta)


@dataclass
class RuellePresentation:
    matrix: Mat2Z
    theta: ThetaVector
    relations: dict[tuple[str, str], QuadNum]
    u_map: Mat2Z
    v_map: Mat2Z
    images: dict[str, dict[str, list[tuple[str, int]]]]
    preserves: dict[str, bool]
    bicharacter_check: bool

    @property
    def verified_reading(self) -> str | None:
        ok = [r for r, v in self.preserves.items() if v]
        return ok[0] if ok else None

    def to_dict(self, ascii: bool = False) -> dict:
        def fmt_word(w):
            return " ".join(n if e == 1 else f"{n}^{e}" for n, e in w) or "1"

        return {
            "generators": ["U1", "U2", "V1", "V2", "W"],
            "theta": self.theta.to_strings(ascii),
            "theta_source": self.theta.source.value,
            "relations": [
                {"pair": list(k), "phase": v.format(ascii)} for k, v in self.relations.items()
            ],
            "w_maps": {
                "U": [list(r) for r in self.u_map.rows],
                "V": [list(r) for r in self.v_map.rows],
            },
            "w_images": {
                reading: {
                    "images": {n: fmt_word(w) for n, w in imgs.items()},
                    "preserves_relations": self.preserves[reading],
                    "verified": reading == self.verified_reading,
                }
                for reading, imgs in self.images.items()
            },
            "bicharacter_check": self.bicharacter_check,
        }


def presentation(H: HypMatrix, theta: ThetaVector | None = None) -> dict[tuple[str, str], QuadNum]:
    """The six commutation phases of the four-unitary presentation."""
    return relation_table(theta if theta is not None else theta_closed_form(H))


def ruelle_presentation(H: HypMatrix) -> RuellePresentation:
    theta = theta_from_eigenvectors(H)
    table = relation_table(theta)
    A = H.mat
    images = {r: w_images(A, r) for r in ("corrected", "literal")}
    preserves = {
        r: substitution_check(theta, imgs, table) for r, imgs in images.items()
    }
    return RuellePresentation(
        matrix=A,
        theta=theta,
        relations=table,
        u_map=A.transpose(),
        v_map=A.adjugate().scale(A.det),
        images=images,
        preserves=preserves,
        bicharacter_check=ruelle_automorphism_check(H, theta),
    )
