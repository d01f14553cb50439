"""Families of bundles and unitary homotopy classes known to be nontrivial.

Each family comes from a stable element with nonzero Hurewicz image in some
ring spectrum (KO, tmf, eo_2, eo_{p-1}) pulled back along a top-cell
collapse. Only degrees are modeled; the elements are opaque labels.
"""

from __future__ import annotations

from dataclasses import dataclass

from .arith import Prime, ceil_div, is_metastable
from .errors import InvalidInput

CITE_SPLIT = "split construction from an orientable multiple of the tautological bundle"
CITE_KO = "KO detection of alpha_{4t+1}"
CITE_TMF = "tmf detection at 2"
CITE_EO2 = "eo_2 detection at 3"
CITE_EOP = "eo_{p-1} detection at p >= 5"
CITE_TODA = "Toda: pi_2n BU(r) = pi_2n of suspended CP^n_r for n > r >= n/2"


@dataclass(frozen=True)
class DetectionInstance:
    """One guaranteed-nonzero class of order ``prime``.

    ``target`` is ``"projective"`` (a rank ``rank`` bundle on ``CP^dim``) or
    ``"unitary"`` (a class in ``pi_degree BU(rank)``).
    """

    prime: int
    rank: int
    target: str
    dim: int | None = None
    degree: int | None = None
    torsion_exponent: int = 1
    source_label: str = ""
    citation: str = ""

    def __post_init__(self):
        Prime(self.prime)
        if self.target not in ("projective", "unitary"):
            raise InvalidInput(f"bad target {self.target!r}")
        if self.rank < 1:
            raise InvalidInput("rank must be positive")
        if self.torsion_exponent != 1:
            raise InvalidInput("detected classes have order p")
        if self.target == "projective":
            if self.dim is None or not is_metastable(self.rank, self.dim):
                raise InvalidInput(f"rank {self.rank} on CP^{self.dim} is not metastable")
        elif self.degree is None:
            raise InvalidInput("unitary instances need a homotopy degree")

    def as_dict(self):
        return {
            "prime": self.prime,
            "rank": self.rank,
            "target": self.target,
            "dim": self.dim,
            "degree": self.degree,
            "torsion_exponent": self.torsion_exponent,
            "source_label": self.source_label,
            "citation": self.citation,
        }


@dataclass(frozen=True)
class SplitConstructionParams:
    n: int                 # orientable multiple n * gamma_1
    k: int
    i: int
    element_degree: int
    prime: int = 2
    source_label: str = "theta"


def split_construction_instance(params: SplitConstructionParams,
                                citation: str = CITE_SPLIT) -> DetectionInstance:
    """Rank ``ni`` bundle on ``CP^{n(k+i)-1}`` from an element in degree ``2nk-3``."""
    n, k, i = params.n, params.k, params.i
    if n < 1 or k < 1 or i < 1:
        raise InvalidInput("n, k and i must be positive")
    if params.element_degree != 2 * n * k - 3:
        raise InvalidInput(f"element degree {params.element_degree} != 2nk-3 = {2 * n * k - 3}")
    if i < k:
        raise InvalidInput(f"need i >= k for metastability, got i={i}, k={k}")
    top, bottom = 2 * n * (k + i) - 2, 2 * n * i
    assert top - params.element_degree == bottom + 1
    return DetectionInstance(params.prime, n * i, "projective", dim=n * (k + i) - 1,
                             source_label=params.source_label, citation=citation)


def ko_family(t: int, i: int) -> DetectionInstance:
    """Rank ``2i`` on ``CP^{2i+4t+1}``, needs ``i >= 2t+1``."""
    if t < 0:
        raise InvalidInput("t must be non-negative")
    if i < 2 * t + 1:
        raise InvalidInput(f"need i >= 2t+1 = {2 * t + 1}, got i={i}")
    params = SplitConstructionParams(2, 2 * t + 1, i, 8 * t + 1, 2, f"alpha_{{{4 * t + 1}}}")
    return split_construction_instance(params, CITE_KO)


TMF_VARIANTS = {
    # variant: (offset in k, degree offset, label)
    "w": (3, 45, "Delta^{8t} w"),
    "w_kappa4": (8, 125, "Delta^{8t} w kappabar^4"),
}


def tmf2_families(t: int, index: int, variant: str = "w") -> DetectionInstance:
    """Rank ``8 index`` on ``CP^{8(12t+off+index)-1}`` with ``off`` 3 or 8."""
    if variant not in TMF_VARIANTS:
        raise InvalidInput(f"variant must be one of {sorted(TMF_VARIANTS)}")
    if t < 0:
        raise InvalidInput("t must be non-negative")
    off, deg, label = TMF_VARIANTS[variant]
    k = 12 * t + off
    if index < k:
        raise InvalidInput(f"need index >= 12t+{off} = {k}, got {index}")
    params = SplitConstructionParams(8, k, index, 192 * t + deg, 2, label)
    return split_construction_instance(params, CITE_TMF)


def eo2_family(t: int, l: int) -> DetectionInstance:
    """Rank ``3l`` on ``CP^{3l+19+36t}``, needs ``3l >= 19+36t``."""
    if t < 0:
        raise InvalidInput("t must be non-negative")
    c = 19 + 36 * t
    if 3 * l < c:
        raise InvalidInput(f"need 3l >= 19+36t = {c}, got 3l={3 * l}")
    return DetectionInstance(3, 3 * l, "projective", dim=3 * l + c,
                             source_label=f"theta_{t}", citation=CITE_EO2)


def eop_degree(p, j: int = 1) -> int:
    """Degree ``d_j = 2p^2(p-1)^2 + 2p - 3 + j(2p^2 - 2p - 2)``."""
    p = Prime(p)
    return 2 * p * p * (p - 1) ** 2 + 2 * p - 3 + j * (2 * p * p - 2 * p - 2)


def eop_family(p, l: int) -> DetectionInstance:
    """Rank ``lp`` on ``CP^{lp+(d+1)/2}``, needs ``p >= 5`` and ``lp >= (d+1)/2``."""
    p = Prime(p)
    if p < 5:
        raise InvalidInput("the eo_{p-1} family needs p >= 5")
    half = (eop_degree(p) + 1) // 2
    if l * p < half:
        raise InvalidInput(f"need lp >= (d+1)/2 = {half}, got lp={l * p}")
    return DetectionInstance(int(p), l * p, "projective", dim=l * p + half,
                             source_label="theta_1", citation=CITE_EOP)


def unitary_families(kind: str, **params) -> DetectionInstance:
    """Unitary-group torsion from the projective families via Toda's isomorphism.

    ``ko``: ``t, i``; ``tmf_w``/``tmf_wk``: ``t, index``; ``eo2``: ``t, l``;
    ``eop``: ``p, j, l``.
    """
    def need(*names):
        missing = [n for n in names if n not in params]
        if missing:
            raise InvalidInput(f"{kind} needs parameters {', '.join(missing)}")
        extra = set(params) - set(names)
        if extra:
            raise InvalidInput(f"{kind} got unexpected parameters {sorted(extra)}")
        return [params[n] for n in names]

    if kind == "ko":
        t, i = need("t", "i")
        base = ko_family(t, i)
        return DetectionInstance(2, 2 * i, "unitary", degree=4 * (2 * t + 1 + i) - 2,
                                 source_label=base.source_label, citation=CITE_KO)
    if kind in ("tmf_w", "tmf_wk"):
        t, index = need("t", "index")
        base = tmf2_families(t, index, "w" if kind == "tmf_w" else "w_kappa4")
        return DetectionInstance(2, base.rank, "unitary", degree=2 * base.dim,
                                 source_label=base.source_label, citation=CITE_TMF)
    if kind == "eo2":
        t, l = need("t", "l")
        if t < 0:
            raise InvalidInput("t must be non-negative")
        if l < 12 * t + 7:
            raise InvalidInput(f"need l >= 12t+7 = {12 * t + 7}, got l={l}")
        return DetectionInstance(3, 3 * l, "unitary", degree=2 * (3 * l + 19 + 36 * t),
                                 source_label=f"theta_{t}", citation=CITE_EO2)
    if kind == "eop":
        p, j, l = need("p", "j", "l")
        p = Prime(p)
        if p < 5:
            raise InvalidInput("the eo_{p-1} family needs p >= 5")
        if not 1 <= j <= p - 1:
            raise InvalidInput(f"need 1 <= j <= p-1, got j={j}")
        d = eop_degree(p, j)
        if 2 * p * l < d + 1:
            raise InvalidInput(f"need l >= (d_j+1)/(2p) = {ceil_div(d + 1, 2 * p)}, got l={l}")
        return DetectionInstance(int(p), l * p, "unitary", degree=2 * l * p + 1 + d,
                                 source_label=f"theta_{j}", citation=CITE_EOP)
    raise InvalidInput(f"unknown family {kind!r}")


@dataclass(frozen=True)
class TodaIdentification:
    degree: int
    rank: int
    dim: int

    def describe(self) -> str:
        return (f"pi_{self.degree} BU({self.rank}) <-> stable pi_{self.degree} "
                f"of Sigma CP^{self.dim}_{self.rank}")


def toda_degree(r: int, n: int) -> TodaIdentification:
    if not (n > r and 2 * r >= n):
        raise InvalidInput(f"need n > r >= n/2, got r={r}, n={n}")
    return TodaIdentification(2 * n, r, n)


def detection_hits(r: int, n: int, p) -> list[DetectionInstance]:
    """All projective family members that are exactly rank ``r`` on ``CP^n``."""
    p = Prime(p)
    c = n - r
    hits = []
    if p == 2:
        if r % 2 == 0 and c >= 1 and (c - 1) % 4 == 0:
            t, i = (c - 1) // 4, r // 2
            if i >= 2 * t + 1:
                hits.append(ko_family(t, i))
        if r % 8 == 0 and (n + 1) % 8 == 0:
            index = r // 8
            for variant, (off, _, _) in TMF_VARIANTS.items():
                rest = (n + 1) // 8 - index - off
                if rest >= 0 and rest % 12 == 0 and index >= rest + off:
                    hits.append(tmf2_families(rest // 12, index, variant))
    elif p == 3:
        if r % 3 == 0 and c >= 19 and (c - 19) % 36 == 0:
            t = (c - 19) // 36
            if r >= c:
                hits.append(eo2_family(t, r // 3))
    elif p >= 5:
        half = (eop_degree(p) + 1) // 2
        if r % p == 0 and c == half and r >= half:
            hits.append(eop_family(p, r // p))
    return hits
