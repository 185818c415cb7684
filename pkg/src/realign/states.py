"""Constructors for the state catalog plus seeded random samplers.

Catalog constructors run the full density-matrix validation so a bad
parameter fails loudly at build time.  The random samplers produce
states that are positive semidefinite by construction (Gram matrices
and convex mixtures of projectors), so they skip the eigenvalue check
and only normalize; property tests cover the invariant instead.

Randomness comes exclusively from ``numpy.random.default_rng`` (PCG64),
a portable, explicitly seeded 64-bit generator: the same (seed, params)
always reproduces the same state, bit for bit.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from . import bipartite, linalg
from .bipartite import BipartiteState
from .errors import ValidationError

FAMILIES = (
    "max_mixed",
    "max_entangled",
    "bell_diagonal",
    "werner2",
    "isotropic",
    "tiles_upb",
    "pyramid_upb",
    "horodecki3x3",
    "horodecki_mix",
    "two_by_two_family",
    "random_mixed",
    "random_separable",
)


@dataclass(frozen=True)
class StateSpec:
    """A state family name plus its parameters.

    The canonical textual form is the family name followed by
    ``key=value`` pairs, e.g. ``horodecki3x3 a=0.236`` or
    ``bell_diagonal weights=0.5,0.5,0,0``.
    """

    family: str
    params: dict = field(default_factory=dict)

    def __str__(self) -> str:
        parts = [self.family]
        for key, value in self.params.items():
            if isinstance(value, (list, tuple)):
                parts.append(f"{key}={','.join(repr(v) for v in value)}")
            else:
                parts.append(f"{key}={value!r}")
        return " ".join(parts)


@dataclass(frozen=True)
class Ensemble:
    """Explicit separable decomposition: terms (p_i, rho_a_i, rho_b_i)."""

    terms: tuple = ()

    def mixture(self) -> np.ndarray:
        out = None
        for p, rho_a, rho_b in self.terms:
            term = p * linalg.kron(rho_a, rho_b)
            out = term if out is None else out + term
        return out


def parse_state_spec(text: str) -> StateSpec:
    """Parse the canonical textual form ``family key=value ...``."""
    tokens = text.split()
    if not tokens:
        raise ValidationError("empty state specification")
    family, params = tokens[0], {}
    if family not in FAMILIES:
        raise ValidationError(
            f"unknown state family {family!r}; known: {', '.join(FAMILIES)}"
        )
    for token in tokens[1:]:
        if "=" not in token:
            raise ValidationError(f"expected key=value, got {token!r}")
        key, _, raw = token.partition("=")
        if "," in raw:
            params[key] = [float(v) for v in raw.split(",") if v]
        else:
            try:
                params[key] = int(raw)
            except ValueError:
                try:
                    params[key] = float(raw)
                except ValueError:
                    raise ValidationError(f"cannot parse value {raw!r} for {key!r}")
    return StateSpec(family, params)


def build(spec: StateSpec) -> BipartiteState:
    """Construct the state described by a :class:`StateSpec`."""
    family, params = spec.family, dict(spec.params)
    constructors = {
        "max_mixed": max_mixed,
        "max_entangled": max_entangled,
        "bell_diagonal": bell_diagonal,
        "werner2": werner2,
        "isotropic": isotropic,
        "tiles_upb": tiles_upb,
        "pyramid_upb": pyramid_upb,
        "horodecki3x3": horodecki3x3,
        "horodecki_mix": horodecki_mix,
        "two_by_two_family": two_by_two_family,
        "random_mixed": random_mixed,
    }
    if family == "random_separable":
        state, _ = random_separable(**_int_dims(params))
        return state
    if family not in constructors:
        raise ValidationError(f"unknown state family {family!r}")
    if family in ("max_mixed", "max_entangled", "isotropic", "random_mixed"):
        params = _int_dims(params)
    try:
        return constructors[family](**params)
    except TypeError as exc:
        raise ValidationError(f"bad parameters for {family}: {exc}") from None


def _int_dims(params: dict) -> dict:
    out = dict(params)
    for key in ("d", "m", "n", "rank", "terms", "seed"):
        if key in out:
            out[key] = int(out[key])
    return out


# ---------------------------------------------------------------------------
# Fixed families
# ---------------------------------------------------------------------------

def max_mixed(d: int) -> BipartiteState:
    """The maximally mixed state I/d^2 on d x d."""
    if d < 1:
        raise ValidationError(f"dimension must be >= 1, got {d}")
    return bipartite.validate(np.eye(d * d) / (d * d), d, d)


def max_entangled(d: int) -> BipartiteState:
    """The maximally entangled pure state sum_i |ii> / sqrt(d) on d x d."""
    if d < 1:
        raise ValidationError(f"dimension must be >= 1, got {d}")
    psi = np.zeros(d * d, dtype=np.complex128)
    psi[:: d + 1] = 1.0 / np.sqrt(d)
    return bipartite.validate(np.outer(psi, psi.conj()), d, d)


_BELL_KETS = np.array(
    [
        [1.0, 0.0, 0.0, 1.0],   # (|00> + |11>)/sqrt2
        [1.0, 0.0, 0.0, -1.0],  # (|00> - |11>)/sqrt2
        [0.0, 1.0, 1.0, 0.0],   # (|01> + |10>)/sqrt2
        [0.0, 1.0, -1.0, 0.0],  # (|01> - |10>)/sqrt2
    ]
) / np.sqrt(2.0)


def bell_diagonal(weights) -> BipartiteState:
    """Mixture of the four Bell projectors with the given probabilities."""
    w = np.asarray(weights, dtype=float)
    if w.shape != (4,):
        raise ValidationError(f"bell_diagonal needs 4 weights, got shape {w.shape}")
    if (w < -1e-12).any() or abs(w.sum() - 1.0) > 1e-9:
        raise ValidationError(
            f"weights must be a probability vector (sum {w.sum():.3e})"
        )
    rho = np.zeros((4, 4), dtype=np.complex128)
    for wi, ket in zip(w, _BELL_KETS):
        rho += wi * np.outer(ket, ket)
    return bipartite.validate(rho, 2, 2)


def werner2(phi: float) -> BipartiteState:
    """Two-qubit Werner state: phi * singlet + (1 - phi) * I/4.

    Positive exactly for phi in [-1/3, 1]; separable iff phi <= 1/3.
    """
    if not -1.0 / 3.0 - 1e-12 <= phi <= 1.0 + 1e-12:
        raise ValidationError(f"werner2 requires phi in [-1/3, 1], got {phi}")
    singlet = np.outer(_BELL_KETS[3], _BELL_KETS[3])
    rho = phi * singlet + (1.0 - phi) * np.eye(4) / 4.0
    return bipartite.validate(rho, 2, 2)


def isotropic(d: int, f: float) -> BipartiteState:
    """Isotropic state in d x d with maximally entangled fraction f.

    f is the fidelity with the maximally entangled state; f = 1/d^2
    gives the maximally mixed state and the state is separable iff
    f <= 1/d.
    """
    if d < 2:
        raise ValidationError(f"isotropic needs d >= 2, got {d}")
    if not 0.0 <= f <= 1.0:
        raise ValidationError(f"isotropic fraction must be in [0, 1], got {f}")
    alpha = (d * d * f - 1.0) / (d * d - 1.0)
    phi = max_entangled(d).matrix
    rho = alpha * phi + (1.0 - alpha) * np.eye(d * d) / (d * d)
    return bipartite.validate(rho, d, d)


def _projector_complement(kets: np.ndarray, dim: int) -> BipartiteState:
    # rho = (I - sum |psi><psi|) / (dim - #kets): the normalized
    # projector onto the orthogonal complement of the given kets.
    proj = np.eye(dim, dtype=np.complex128)
    for ket in kets:
        proj -= np.outer(ket, ket.conj())
    return bipartite.validate(proj / (dim - len(kets)), 3, 3)


def tiles_upb() -> BipartiteState:
    """Bound entangled 3 x 3 state from the five-tile product basis.

    The complement of an unextendible product basis contains no product
    vector, so the normalized complement projector is entangled, while
    remaining PPT.
    """
    k0 = np.array([1.0, 0.0, 0.0])
    k1 = np.array([0.0, 1.0, 0.0])
    k2 = np.array([0.0, 0.0, 1.0])
    ones = (k0 + k1 + k2) / np.sqrt(3.0)
    kets = np.array(
        [
            np.kron(k0, (k0 - k1) / np.sqrt(2.0)),
            np.kron(k2, (k1 - k2) / np.sqrt(2.0)),
            np.kron((k0 - k1) / np.sqrt(2.0), k2),
            np.kron((k1 - k2) / np.sqrt(2.0), k0),
            np.kron(ones, ones),
        ]
    )
    return _projector_complement(kets, 9)


def pyramid_upb() -> BipartiteState:
    """Bound entangled 3 x 3 state from the pyramid product basis.

    The five local vectors point along a regular pentagon lifted out of
    plane by h = sqrt(1 + sqrt 5)/2, scaled so that v_j is orthogonal
    to v_(j +- 2); pairing v_j with v_(2j mod 5) makes the five product
    vectors mutually orthogonal.
    """
    h = 0.5 * np.sqrt(1.0 + np.sqrt(5.0))
    scale = 2.0 / np.sqrt(5.0 + np.sqrt(5.0))
    j = np.arange(5)
    v = scale * np.stack(
        [np.cos(2 * np.pi * j / 5), np.sin(2 * np.pi * j / 5), np.full(5, h)],
        axis=1,
    )
    kets = np.array([np.kron(v[i], v[(2 * i) % 5]) for i in range(5)])
    return _projector_complement(kets, 9)


def horodecki3x3(a: float) -> BipartiteState:
    """The 3 x 3 bound entangled state with interpolation parameter a.

    PPT for every a in (0, 1) yet entangled; the realignment criterion
    detects a thin band of it.
    """
    if not 0.0 < a < 1.0:
        raise ValidationError(f"horodecki3x3 requires 0 < a < 1, got {a}")
    up = (1.0 + a) / 2.0
    cross = np.sqrt(1.0 - a * a) / 2.0
    rho = np.zeros((9, 9))
    for i, j in [(0, 0), (1, 1), (2, 2), (3, 3), (4, 4), (5, 5), (7, 7),
                 (0, 4), (4, 0), (0, 8), (8, 0), (4, 8), (8, 4)]:
        rho[i, j] = a
    rho[6, 6] = up
    rho[8, 8] = up
    rho[6, 8] = cross
    rho[8, 6] = cross
    return bipartite.validate(rho / (8.0 * a + 1.0), 3, 3)


def horodecki_mix(a: float, p: float) -> BipartiteState:
    """Convex mixture p * horodecki3x3(a) + (1 - p) * I/9."""
    if not 0.0 <= p <= 1.0:
        raise ValidationError(f"horodecki_mix requires p in [0, 1], got {p}")
    rho = p * horodecki3x3(a).matrix + (1.0 - p) * np.eye(9) / 9.0
    return bipartite.validate(rho, 3, 3)


def two_by_two_family(a: float, p: float) -> BipartiteState:
    """Two-qubit mixture of a|00> + b|11> and a|01> + b|10> projectors.

    With b = sqrt(1 - a^2), mixes the two pure states with weights p
    and 1 - p.  Separable exactly when p = 1/2 or a in {0, 1} (where it
    is diagonal); a is permitted on the closed interval [0, 1].
    """
    if not 0.0 <= a <= 1.0:
        raise ValidationError(f"two_by_two_family requires a in [0, 1], got {a}")
    if not 0.0 <= p <= 1.0:
        raise ValidationError(f"two_by_two_family requires p in [0, 1], got {p}")
    b = np.sqrt(1.0 - a * a)
    chi = np.array([a, 0.0, 0.0, b])
    xi = np.array([0.0, a, b, 0.0])
    rho = p * np.outer(chi, chi) + (1.0 - p) * np.outer(xi, xi)
    return bipartite.validate(rho, 2, 2)


# ---------------------------------------------------------------------------
# Seeded random samplers
# ---------------------------------------------------------------------------

def _random_pure_density(rng: np.random.Generator, dim: int) -> np.ndarray:
    psi = rng.normal(size=dim) + 1j * rng.normal(size=dim)
    psi /= np.sqrt((psi.real**2 + psi.imag**2).sum())
    return np.outer(psi, psi.conj())


def random_mixed(m: int, n: int, rank: int | None = None, seed: int = 0) -> BipartiteState:
    """Random mixed state rho = G G^H / tr(G G^H), G complex Gaussian.

    G has shape (mn, rank); rank defaults to mn (generic full rank),
    rank=1 gives a random pure state.
    """
    if m < 1 or n < 1:
        raise ValidationError(f"dimensions must be positive, got ({m}, {n})")
    dim = m * n
    rank = dim if rank is None else rank
    if not 1 <= rank <= dim:
        raise ValidationError(f"rank must be in [1, {dim}], got {rank}")
    rng = np.random.default_rng(seed)
    g = rng.normal(size=(dim, rank)) + 1j * rng.normal(size=(dim, rank))
    rho = g @ g.conj().T
    rho /= rho.trace().real
    return bipartite._trusted((rho + rho.conj().T) / 2.0, m, n)


def random_separable(
    m: int, n: int, terms: int = 10, seed: int = 0
) -> tuple[BipartiteState, Ensemble]:
    """Seeded convex mixture of random pure product states.

    Returns the state together with the explicit ensemble that built
    it, as a separability witness for soundness tests.
    """
    if m < 1 or n < 1:
        raise ValidationError(f"dimensions must be positive, got ({m}, {n})")
    if terms < 1:
        raise ValidationError(f"terms must be >= 1, got {terms}")
    rng = np.random.default_rng(seed)
    weights = rng.dirichlet(np.ones(terms))
    ensemble = []
    rho = np.zeros((m * n, m * n), dtype=np.complex128)
    for p in weights:
        rho_a = _random_pure_density(rng, m)
        rho_b = _random_pure_density(rng, n)
        ensemble.append((float(p), rho_a, rho_b))
        rho += p * linalg.kron(rho_a, rho_b)
    state = bipartite._trusted((rho + rho.conj().T) / 2.0, m, n)
    return state, Ensemble(terms=tuple(ensemble))


# ---------------------------------------------------------------------------
# Vectorized grid/batch builders (used by the sweep and search drivers)
# ---------------------------------------------------------------------------

def werner2_stack(phi_values: np.ndarray) -> np.ndarray:
    """Stack of werner2 states over a grid of mixing parameters."""
    phi = np.asarray(phi_values, dtype=float)
    if phi.size and (phi.min() < -1.0 / 3.0 - 1e-12 or phi.max() > 1.0 + 1e-12):
        raise ValidationError("werner2 grid must lie in [-1/3, 1]")
    singlet = np.outer(_BELL_KETS[3], _BELL_KETS[3])
    rho = phi[:, None, None] * singlet + (1.0 - phi)[:, None, None] * np.eye(4) / 4.0
    return rho.astype(np.complex128)


def random_mixed_stack(
    rng: np.random.Generator, m: int, n: int, count: int, rank: int | None = None
) -> np.ndarray:
    """Batch of random mixed states drawn sequentially from ``rng``."""
    dim = m * n
    rank = dim if rank is None else rank
    g = rng.normal(size=(count, dim, rank)) + 1j * rng.normal(size=(count, dim, rank))
    rho = g @ np.conj(np.swapaxes(g, -1, -2))
    tr = np.einsum("kii->k", rho).real
    rho /= tr[:, None, None]
    return (rho + np.conj(np.swapaxes(rho, -1, -2))) / 2.0


def random_separable_stack(
    rng: np.random.Generator, m: int, n: int, count: int, terms: int = 10
) -> np.ndarray:
    """Batch of random separable states (convex product mixtures)."""
    weights = rng.dirichlet(np.ones(terms), size=count)  # (count, terms)
    rho = np.zeros((count, m * n, m * n), dtype=np.complex128)
    for t in range(terms):
        psi_a = rng.normal(size=(count, m)) + 1j * rng.normal(size=(count, m))
        psi_a /= np.sqrt((psi_a.real**2 + psi_a.imag**2).sum(axis=1))[:, None]
        psi_b = rng.normal(size=(count, n)) + 1j * rng.normal(size=(count, n))
        psi_b /= np.sqrt((psi_b.real**2 + psi_b.imag**2).sum(axis=1))[:, None]
        da = np.einsum("ki,kj->kij", psi_a, psi_a.conj())
        db = np.einsum("ki,kj->kij", psi_b, psi_b.conj())
        prod = np.einsum("kab,kcd->kacbd", da, db).reshape(count, m * n, m * n)
        rho += weights[:, t, None, None] * prod
    return (rho + np.conj(np.swapaxes(rho, -1, -2))) / 2.0

def horodecki_mix_stack(a_values: np.ndarray, p_values: np.ndarray) -> np.ndarray:
    """Stack of horodecki_mix states over the (a, p) grid, a-major."""
    a = np.asarray(a_values, dtype=float)
    p = np.asarray(p_values, dtype=float)
    base = np.zeros((a.size, 9, 9))
    for i, j in [(0, 0), (1, 1), (2, 2), (3, 3), (4, 4), (5, 5), (7, 7),
                 (0, 4), (4, 0), (0, 8), (8, 0), (4, 8), (8, 4)]:
        base[:, i, j] = a
    up = (1.0 + a) / 2.0
    cross = np.sqrt(1.0 - a * a) / 2.0
    base[:, 6, 6] = up
    base[:, 8, 8] = up
    base[:, 6, 8] = cross
    base[:, 8, 6] = cross
    base /= (8.0 * a + 1.0)[:, None, None]
    pk = p[None, :, None, None]
    rho = pk * base[:, None] + (1.0 - pk) * (np.eye(9) / 9.0)
    return rho.reshape(a.size * p.size, 9, 9).astype(np.complex128)


def two_by_two_stack(a_values: np.ndarray, p_values: np.ndarray) -> np.ndarray:
    """Stack of two_by_two_family states over the (a, p) grid, a-major."""
    a = np.asarray(a_values, dtype=float)[:, None]
    p = np.asarray(p_values, dtype=float)[None, :]
    b = np.sqrt(1.0 - a * a)
    ka, kp = a.shape[0], p.shape[1]
    rho = np.zeros((ka, kp, 4, 4))
    aa, bb, ab = a * a, b * b, a * b
    rho[:, :, 0, 0] = p * aa
    rho[:, :, 3, 3] = p * bb
    rho[:, :, 0, 3] = p * ab
    rho[:, :, 3, 0] = p * ab
    rho[:, :, 1, 1] = (1.0 - p) * aa
    rho[:, :, 2, 2] = (1.0 - p) * bb
    rho[:, :, 1, 2] = (1.0 - p) * ab
    rho[:, :, 2, 1] = (1.0 - p) * ab
    return rho.reshape(ka * kp, 4, 4).astype(np.complex128)
