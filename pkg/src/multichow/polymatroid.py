"""Set functions recording dimensions of coordinate projections.

A subvariety of a product of projective spaces induces the function
``delta(I) = dim`` of its projection to the factors indexed by ``I``.  Such
functions are normalized (``delta(empty) = 0``), monotone and submodular,
i.e. they are discrete polymatroid rank functions.  This module validates
those axioms, converts between rank functions and multidegree supports, and
classifies slicing-codimension profiles ``beta`` (1-deficient / circuit /
determining).

Subsets of ``{1, ..., k}`` are encoded as bitmasks (bit ``i-1`` for element
``i``), and every subset-quantified check enumerates all ``2**k`` subsets
(or ``O(2**k * k**2)`` local conditions), so the intended regime is small
``k``; the hard cap is ``k <= 24``.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import product
from typing import Iterable, Sequence

from .errors import PreconditionError

MAX_K = 24

#: A multidegree exponent vector; kept as a plain tuple of ints.
GammaVector = tuple

Criterion = str  # "hypersurface" | "determining"


def full_mask(k: int) -> int:
    return (1 << k) - 1


def mask_of(indices: Iterable[int], k: int) -> int:
    mask = 0
    for i in indices:
        if not 1 <= i <= k:
            raise PreconditionError(f"subset element {i} out of range 1..{k}")
        mask |= 1 << (i - 1)
    return mask


def indices_of(mask: int) -> tuple[int, ...]:
    return tuple(i + 1 for i in range(mask.bit_length()) if mask >> i & 1)


@dataclass(frozen=True)
class SpaceSignature:
    """Ambient product of projective spaces plus the subvariety dimension.

    ``n`` lists the factor dimensions; ``r`` is the dimension of the
    subvariety (or cycle) living inside the product.
    """

    n: tuple[int, ...]
    r: int

    def __post_init__(self):
        object.__setattr__(self, "n", tuple(int(x) for x in self.n))
        if not self.n:
            raise PreconditionError("need at least one factor")
        if len(self.n) > MAX_K:
            raise PreconditionError(f"at most {MAX_K} factors supported")
        if any(x < 0 for x in self.n):
            raise PreconditionError("factor dimensions must be non-negative")
        if not 0 <= self.r <= sum(self.n):
            raise PreconditionError("dimension r out of range")

    @property
    def k(self) -> int:
        return len(self.n)

    def codim(self) -> int:
        return sum(self.n) - self.r

    def sum_over(self, mask: int) -> int:
        return sum(self.n[i] for i in range(self.k) if mask >> i & 1)


@dataclass(frozen=True)
class RankFunction:
    """Integer set function on subsets of ``{1,...,k}``, stored densely.

    ``values[mask]`` is the value on the subset encoded by ``mask``; nothing
    about the axioms is enforced here -- use :func:`validate_rank_function`.
    """

    k: int
    values: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "values", tuple(int(v) for v in self.values))
        if not 1 <= self.k <= MAX_K:
            raise PreconditionError(f"k must be in 1..{MAX_K}")
        if len(self.values) != 1 << self.k:
            raise PreconditionError(
                f"rank function on k={self.k} needs {1 << self.k} values, "
                f"got {len(self.values)}"
            )

    def value(self, mask: int) -> int:
        return self.values[mask]

    def of(self, indices: Iterable[int]) -> int:
        return self.values[mask_of(indices, self.k)]

    @classmethod
    def from_subset_values(cls, k: int, table: dict[frozenset, int]) -> "RankFunction":
        values = []
        for mask in range(1 << k):
            key = frozenset(indices_of(mask))
            if key not in table:
                raise PreconditionError(f"missing subset {sorted(key)}")
            values.append(table[key])
        return cls(k, tuple(values))

    @classmethod
    def from_json(cls, obj) -> "RankFunction":
        """Parse ``{"k": int, "values": [{"subset": [...], "delta": int}]}``.

        Subsets are 1-based index lists; each of the ``2**k`` subsets must
        appear exactly once.
        """
        try:
            k = int(obj["k"])
            entries = obj["values"]
        except (KeyError, TypeError) as exc:
            raise PreconditionError(f"malformed rank function JSON: {exc}")
        if not 1 <= k <= MAX_K:
            raise PreconditionError(f"k must be in 1..{MAX_K}")
        values: list = [None] * (1 << k)
        for entry in entries:
            try:
                mask = mask_of(entry["subset"], k)
                delta = int(entry["delta"])
            except (KeyError, TypeError) as exc:
                raise PreconditionError(f"malformed rank function entry: {exc}")
            if values[mask] is not None:
                raise PreconditionError(
                    f"subset {sorted(entry['subset'])} appears more than once"
                )
            values[mask] = delta
        missing = [mask for mask, v in enumerate(values) if v is None]
        if missing:
            raise PreconditionError(
                f"subset {list(indices_of(missing[0]))} missing from rank function"
            )
        return cls(k, tuple(values))

    def to_json(self) -> dict:
        return {
            "k": self.k,
            "values": [
                {"subset": list(indices_of(mask)), "delta": self.values[mask]}
                for mask in range(1 << self.k)
            ],
        }


@dataclass(frozen=True)
class BetaVector:
    """Codimension profile of a tuple of slicing linear spaces."""

    beta: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "beta", tuple(int(b) for b in self.beta))

    @property
    def k(self) -> int:
        return len(self.beta)

    @property
    def total(self) -> int:
        return sum(self.beta)

    def alpha(self, sig: SpaceSignature) -> tuple[int, ...]:
        """Dimensions n_i - beta_i of the slicing spaces themselves."""
        return tuple(n - b for n, b in zip(sig.n, self.beta))

    def sum_over(self, mask: int) -> int:
        return sum(self.beta[i] for i in range(self.k) if mask >> i & 1)

    def check_range(self, sig: SpaceSignature, total: int | None = None) -> None:
        if self.k != sig.k:
            raise PreconditionError(
                f"beta has {self.k} entries but signature has {sig.k} factors"
            )
        for i, b in enumerate(self.beta):
            if not 0 <= b <= sig.n[i]:
                raise PreconditionError(
                    f"beta_{i + 1}={b} out of range 0..{sig.n[i]}"
                )
        if total is not None and self.total != total:
            raise PreconditionError(
                f"|beta|={self.total}, expected {total}"
            )


def as_beta(beta) -> BetaVector:
    return beta if isinstance(beta, BetaVector) else BetaVector(tuple(beta))


@dataclass(frozen=True)
class Violation:
    axiom: str
    subset_i: tuple[int, ...]
    subset_j: tuple[int, ...] | None = None


@dataclass(frozen=True)
class ValidationReport:
    ok: bool
    violations: tuple[Violation, ...]

    def to_json(self) -> dict:
        return {
            "ok": self.ok,
            "violations": [
                {
                    "axiom": v.axiom,
                    "I": list(v.subset_i),
                    "J": list(v.subset_j) if v.subset_j is not None else None,
                }
                for v in self.violations
            ],
        }


def validate_rank_function(sig: SpaceSignature, delta: RankFunction) -> ValidationReport:
    """Check the polymatroid axioms plus the ambient bound.

    Monotonicity and submodularity are checked through their single-element
    local forms, which are equivalent to the quantified axioms; each reported
    violation carries a witnessing pair of subsets.
    """
    if delta.k != sig.k:
        raise PreconditionError(
            f"rank function on k={delta.k} does not match signature k={sig.k}"
        )
    k = sig.k
    violations: list[Violation] = []
    if delta.values[0] != 0:
        violations.append(Violation("normalization", (), None))
    for mask in range(1 << k):
        if delta.values[mask] > sig.sum_over(mask):
            violations.append(Violation("bounded", indices_of(mask), None))
        outside = [i for i in range(k) if not mask >> i & 1]
        for idx, i in enumerate(outside):
            with_i = mask | 1 << i
            if delta.values[mask] > delta.values[with_i]:
                violations.append(
                    Violation("monotone", indices_of(mask), indices_of(with_i))
                )
            for j in outside[idx + 1:]:
                with_j = mask | 1 << j
                if (
                    delta.values[with_i] + delta.values[with_j]
                    < delta.values[with_i | with_j] + delta.values[mask]
                ):
                    violations.append(
                        Violation(
                            "submodular", indices_of(with_i), indices_of(with_j)
                        )
                    )
    return ValidationReport(not violations, tuple(violations))


def _require_valid(sig: SpaceSignature, delta: RankFunction) -> None:
    report = validate_rank_function(sig, delta)
    if not report.ok:
        first = report.violations[0]
        raise PreconditionError(
            f"invalid rank function: {first.axiom} fails at "
            f"I={list(first.subset_i)}"
            + (f", J={list(first.subset_j)}" if first.subset_j is not None else "")
        )
    if delta.values[full_mask(sig.k)] != sig.r:
        raise PreconditionError(
            f"delta(full set)={delta.values[full_mask(sig.k)]} must equal r={sig.r}"
        )


def support_from_projections(
    sig: SpaceSignature, delta: RankFunction
) -> tuple[GammaVector, ...]:
    """All exponent vectors gamma compatible with the projection dimensions.

    Returns the gamma with 0 <= gamma_i <= n_i, sum(n_i - gamma_i) = r and
    sum_{i in I}(n_i - gamma_i) <= delta(I) for every proper nonempty I,
    in lexicographic order.
    """
    _require_valid(sig, delta)
    k = sig.k
    full = full_mask(k)
    out = []
    for gamma in product(*(range(n + 1) for n in sig.n)):
        drops = tuple(n - g for n, g in zip(sig.n, gamma))
        if sum(drops) != sig.r:
            continue
        ok = True
        for mask in range(1, full):
            total = sum(drops[i] for i in range(k) if mask >> i & 1)
            if total > delta.values[mask]:
                ok = False
                break
        if ok:
            out.append(tuple(gamma))
    return tuple(out)


def projections_from_support(
    sig: SpaceSignature, support: Iterable[GammaVector]
) -> RankFunction:
    """Recover delta(I) = max over gamma of sum_{i in I}(n_i - gamma_i).

    Inverts :func:`support_from_projections` whenever the support is the full
    set of lattice points it would produce (in particular for supports of
    actual irreducible varieties).
    """
    support = [tuple(int(g) for g in gamma) for gamma in support]
    if not support:
        raise PreconditionError("rank function undefined for empty support")
    k = sig.k
    codim = sig.codim()
    drops_list = []
    for gamma in support:
        if len(gamma) != k:
            raise PreconditionError(f"gamma {gamma} has wrong length")
        if any(not 0 <= g <= n for g, n in zip(gamma, sig.n)):
            raise PreconditionError(f"gamma {gamma} out of range for n={sig.n}")
        if sum(gamma) != codim:
            raise PreconditionError(
                f"gamma {gamma} has total degree {sum(gamma)}, expected {codim}"
            )
        drops_list.append(tuple(n - g for n, g in zip(sig.n, gamma)))
    values = [0] * (1 << k)
    for mask in range(1, 1 << k):
        values[mask] = max(
            sum(drops[i] for i in range(k) if mask >> i & 1) for drops in drops_list
        )
    return RankFunction(k, tuple(values))


def _check_beta(sig: SpaceSignature, beta: BetaVector) -> None:
    beta.check_range(sig, total=sig.r + 1)


def is_one_deficient(sig: SpaceSignature, delta: RankFunction, beta) -> bool:
    """|beta_I| <= delta(I) + 1 for every subset I.

    Exactly the condition for the incidence locus cut by spaces of
    codimension profile beta to be a hypersurface.
    """
    beta = as_beta(beta)
    _check_beta(sig, beta)
    _require_valid(sig, delta)
    return all(
        beta.sum_over(mask) <= delta.values[mask] + 1
        for mask in range(1 << sig.k)
    )


def tight_sets(sig: SpaceSignature, delta: RankFunction, beta) -> tuple[int, ...]:
    """Bitmasks of all subsets with |beta_I| = delta(I) + 1 (for tests)."""
    beta = as_beta(beta)
    return tuple(
        mask
        for mask in range(1 << sig.k)
        if beta.sum_over(mask) == delta.values[mask] + 1
    )


def minimal_tight_set(sig: SpaceSignature, delta: RankFunction, beta) -> tuple[int, ...]:
    """The unique nonempty J with |beta_I| = delta(I)+1 iff I contains J.

    Computed as the intersection of all tight subsets; the full set is always
    tight since |beta| = r + 1, and the intersection of two tight sets is
    again tight by submodularity.
    """
    beta = as_beta(beta)
    if not is_one_deficient(sig, delta, beta):
        raise PreconditionError("beta is not 1-deficient")
    mask = full_mask(sig.k)
    for tight in tight_sets(sig, delta, beta):
        mask &= tight
    return indices_of(mask)


def is_circuit(sig: SpaceSignature, delta: RankFunction, beta) -> bool:
    """True iff beta is positive, 1-deficient, and only the full set is tight.

    Equivalently, |beta_I| <= delta(I) for every proper nonempty subset,
    which is the condition for the incidence hypersurface to determine the
    variety.
    """
    beta = as_beta(beta)
    _check_beta(sig, beta)
    if any(b <= 0 for b in beta.beta):
        return False
    if not is_one_deficient(sig, delta, beta):
        return False
    return minimal_tight_set(sig, delta, beta) == indices_of(full_mask(sig.k))


def enumerate_beta(
    sig: SpaceSignature, delta: RankFunction, criterion: Criterion
) -> tuple[BetaVector, ...]:
    """All in-range beta with |beta| = r+1 passing the chosen criterion.

    ``"hypersurface"``: |beta_I| <= delta(I)+1 for all I (1-deficiency).
    ``"determining"``:  |beta_I| <= delta(I) for all proper nonempty I.
    Output is lexicographically sorted.
    """
    if criterion not in ("hypersurface", "determining"):
        raise PreconditionError(f"unknown criterion {criterion!r}")
    _require_valid(sig, delta)
    k = sig.k
    full = full_mask(k)
    out = []
    for raw in product(*(range(n + 1) for n in sig.n)):
        if sum(raw) != sig.r + 1:
            continue
        beta = BetaVector(raw)
        if criterion == "hypersurface":
            keep = all(
                beta.sum_over(mask) <= delta.values[mask] + 1
                for mask in range(1, full + 1)
            )
        else:
            keep = all(
                beta.sum_over(mask) <= delta.values[mask]
                for mask in range(1, full)
            )
        if keep:
            out.append(beta)
    return tuple(out)
