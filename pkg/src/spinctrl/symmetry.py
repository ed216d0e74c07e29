"""Symmetry detectors: commutant, dark states, anticommutant, automorphisms,
and the invariant-block decomposition.

A Hermitian S commuting with both Hamiltonians splits the space into
invariant blocks; for real symmetric h the real matrix solutions of
[h, M] = 0 decompose into a symmetric and an antisymmetric part that each
commute, and M -> sym(M) + i*antisym(M) is a bijection onto the Hermitian
commutant, so the real nullspace dimension of the stacked commutator system
already is the Hermitian commutant dimension.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .network import NetworkSpec


class DecompositionError(RuntimeError):
    """Block refinement failed to reach block-diagonal form."""


@dataclass
class CommutantBasis:
    dimension: int
    basis: list[np.ndarray]  # Hermitian, orthonormal under Re tr(A^H B)
    has_external_symmetry: bool


@dataclass
class DarkStateSet:
    """Eigenvectors of h0 with zero amplitude on every controlled node."""

    vectors: np.ndarray      # (d, count), orthonormal columns
    eigenvalues: np.ndarray  # (count,)
    residuals: np.ndarray    # max |v_k| over controls, per vector

    @property
    def count(self) -> int:
        return self.vectors.shape[1]


@dataclass
class AnticommutantResult:
    dimension: int
    has_internal_symmetry: bool
    symmetry_type: str | None  # "orthogonal", "symplectic", "mixed", or None
    basis: list[np.ndarray] = field(default_factory=list)


@dataclass
class DecompositionReport:
    block_sizes: tuple[int, ...]           # sorted ascending
    block_projectors: list[np.ndarray]     # orthonormal column bases, same order


def commutant(h0: np.ndarray, h1: np.ndarray, tolerance: float = 1e-9) -> CommutantBasis:
    """Hermitian matrices commuting with both h0 and h1.

    Computed as the nullspace of the stacked real (2d^2) x (d^2) system
    M -> ([h0, M], [h1, M]) over all real matrices M.
    """
    d = h0.shape[0]
    eye = np.eye(d)
    stacked = np.vstack([np.kron(h, eye) - np.kron(eye, h) for h in (h0, h1)])
    null = _nullspace(stacked, tolerance)
    herm = []
    for col in null.T:
        m = col.reshape(d, d)
        herm.append(0.5 * (m + m.T) + 0.5j * (m - m.T))
    herm = _orthonormalize_hermitian(herm)
    return CommutantBasis(dimension=len(herm), basis=herm,
                          has_external_symmetry=len(herm) > 1)


def dark_states(h0: np.ndarray, controls, tolerance: float = 1e-8,
                degeneracy_tol: float = 1e-10) -> DarkStateSet:
    """Intersect each eigenspace of h0 with {v : v_k = 0 for k in controls}.

    Eigenvalues are grouped into eigenspaces when gaps fall below
    degeneracy_tol relative to the spectral scale; within each group the
    dark directions are the null vectors of the control-row block.
    """
    d = h0.shape[0]
    ctrl = sorted(int(k) - 1 for k in controls)
    w, v = np.linalg.eigh(h0)
    scale = max(1.0, float(np.abs(w).max()) if d else 1.0)
    vecs = []
    vals = []
    for lo, hi in _eigen_groups(w, degeneracy_tol * scale):
        block = v[:, lo:hi]
        rows = block[ctrl, :]
        _, s, vt = np.linalg.svd(rows, full_matrices=True)
        rank = int(np.sum(s > tolerance)) if s.size else 0
        for j in range(rank, hi - lo):
            dark = block @ vt[j]
            vecs.append(dark)
            vals.append(w[lo:hi].mean())
    if vecs:
        vmat = np.column_stack(vecs)
        residuals = np.abs(vmat[ctrl, :]).max(axis=0)
    else:
        vmat = np.zeros((d, 0))
        residuals = np.zeros(0)
    return DarkStateSet(vectors=vmat, eigenvalues=np.array(vals), residuals=residuals)


def internal_symmetry(h0: np.ndarray, h1: np.ndarray,
                      tolerance: float = 1e-9) -> AnticommutantResult:
    """Solutions of Hb^T S + S Hb = 0 for the traceless shifts of h0 and h1.

    Solved over real S (the Hamiltonians are real symmetric, so the real and
    imaginary parts of any complex solution solve separately). Solutions
    split by transpose parity: symmetric solutions signal orthogonal type,
    antisymmetric ones symplectic; an internal symmetry needs an invertible
    solution.
    """
    d = h0.shape[0]
    eye = np.eye(d)
    out_basis: list[np.ndarray] = []
    blocks = []
    for h in (h0, h1):
        hb = h - (np.trace(h) / d) * eye
        blocks.append(np.kron(hb, eye) + np.kron(eye, hb))
    null = _nullspace(np.vstack(blocks), tolerance)
    dim = null.shape[1]
    if dim == 0:
        return AnticommutantResult(dimension=0, has_internal_symmetry=False,
                                   symmetry_type=None)
    sols = [col.reshape(d, d) for col in null.T]
    out_basis = sols
    sym_part = [0.5 * (s + s.T) for s in sols]
    anti_part = [0.5 * (s - s.T) for s in sols]
    has_sym = _matrix_rank_of_span(sym_part, tolerance) > 0
    has_anti = _matrix_rank_of_span(anti_part, tolerance) > 0
    invertible = False
    rng = np.random.default_rng(0)
    for _ in range(8):
        coeff = rng.standard_normal(dim)
        cand = sum(c * s for c, s in zip(coeff, sols))
        smin = np.linalg.svd(cand, compute_uv=False)[-1]
        if smin > tolerance * max(1.0, np.abs(cand).max()):
            invertible = True
            break
    if has_sym and has_anti:
        stype = "mixed"
    elif has_sym:
        stype = "orthogonal"
    else:
        stype = "symplectic"
    return AnticommutantResult(dimension=dim, has_internal_symmetry=invertible,
                               symmetry_type=stype, basis=out_basis)


def graph_automorphisms(spec: NetworkSpec, node_cap: int = 1_000_000) -> list[tuple[int, ...]]:
    """Non-identity node permutations preserving weighted edges and controls.

    Backtracking over candidate images with iterated color refinement
    (control flag, degree, incident-weight profile). Permutations are
    returned as tuples p with p[i-1] = image of node i. The search visits at
    most node_cap partial assignments and raises beyond that.
    """
    n = spec.node_count
    weights = {}
    for m, q, g in spec.edges:
        weights[(m, q)] = g
        weights[(q, m)] = g
    adj = spec.adjacency()
    controls = set(spec.controls)

    wclasses = _weight_classes(sorted({g for _, _, g in spec.edges}))

    def wclass(a, b):
        return wclasses.get(weights.get((a, b)))

    color = {v: (v in controls, len(adj[v]),
                 tuple(sorted(wclasses[g] for _, g in adj[v]))) for v in range(1, n + 1)}
    for _ in range(n):
        newcolor = {}
        for v in range(1, n + 1):
            profile = tuple(sorted((color[w], wclasses[g]) for w, g in adj[v]))
            newcolor[v] = (color[v], profile)
        ranks = {c: i for i, c in enumerate(sorted(set(newcolor.values()), key=repr))}
        relabeled = {v: ranks[newcolor[v]] for v in range(1, n + 1)}
        if len(set(relabeled.values())) == len(set(color.values())):
            color = relabeled
            break
        color = relabeled

    order = sorted(range(1, n + 1), key=lambda v: (color[v], v))
    found: list[tuple[int, ...]] = []
    mapping: dict[int, int] = {}
    used: set[int] = set()
    visited = 0

    def extend(pos: int) -> None:
        nonlocal visited
        visited += 1
        if visited > node_cap:
            raise RuntimeError(f"automorphism search cap exceeded ({node_cap} nodes)")
        if pos == n:
            perm = tuple(mapping[v] for v in range(1, n + 1))
            if perm != tuple(range(1, n + 1)):
                found.append(perm)
            return
        v = order[pos]
        for img in range(1, n + 1):
            if img in used or color[img] != color[v]:
                continue
            ok = True
            for w, g in adj[v]:
                if w in mapping:
                    gw = weights.get((img, mapping[w]))
                    if gw is None or wclasses[gw] != wclasses[g]:
                        ok = False
                        break
            if not ok:
                continue
            deg_mapped = sum(1 for w, _ in adj[v] if w in mapping)
            deg_img_mapped = sum(1 for w, _ in adj[img] if w in used)
            if deg_mapped != deg_img_mapped:
                continue
            mapping[v] = img
            used.add(img)
            extend(pos + 1)
            used.discard(img)
            del mapping[v]

    extend(0)
    return sorted(found)


def permutation_matrix(perm: tuple[int, ...]) -> np.ndarray:
    n = len(perm)
    p = np.zeros((n, n))
    for i, img in enumerate(perm):
        p[img - 1, i] = 1.0
    return p


def decompose(h0: np.ndarray, h1: np.ndarray, comm: CommutantBasis,
              tolerance: float = 1e-9, seed: int = 0,
              max_attempts: int = 5) -> DecompositionReport:
    """Invariant blocks from eigenspaces of generic commutant elements.

    Eigenspaces of any commutant element are invariant under h0 and h1, so a
    random-coefficient element splits the space; further generic draws refine
    the partition until both Hamiltonians are block-diagonal to tolerance.
    """
    d = h0.shape[0]
    if comm.dimension <= 1:
        return DecompositionReport(block_sizes=(d,), block_projectors=[np.eye(d)])
    rng = np.random.default_rng(seed)
    projectors = [np.eye(d)]
    scale = max(1.0, np.abs(h0).max(), np.abs(h1).max())
    history = []
    for attempt in range(max_attempts):
        coeff = rng.standard_normal(comm.dimension)
        coeff /= np.linalg.norm(coeff)
        generic = sum(c * b for c, b in zip(coeff, comm.basis))
        refined = []
        for basis_cols in projectors:
            sub = basis_cols.conj().T @ generic @ basis_cols
            w, v = np.linalg.eigh(sub)
            gscale = max(1.0, float(np.abs(w).max()) if w.size else 1.0)
            for lo, hi in _eigen_groups(w, 1e-6 * gscale):
                refined.append(basis_cols @ v[:, lo:hi])
        projectors = refined
        worst = max(_off_block_residual(h, projectors) for h in (h0, h1))
        history.append(worst)
        if worst <= tolerance * scale:
            ordered = sorted(projectors, key=lambda p: p.shape[1])
            return DecompositionReport(
                block_sizes=tuple(p.shape[1] for p in ordered),
                block_projectors=ordered)
    raise DecompositionError(
        f"block refinement stalled after {max_attempts} draws; "
        f"off-block residuals {history}")


@dataclass
class SymmetryReport:
    """Aggregate of the four detectors for one subspace Hamiltonian pair."""

    commutant_dimension: int
    dark_state_count: int
    dark_state_eigenvalues: list[float]
    internal_symmetry_dimension: int
    internal_symmetry_type: str | None
    automorphisms: list[tuple[int, ...]]
    block_sizes: tuple[int, ...]

    def to_dict(self) -> dict:
        return {
            "commutant_dimension": self.commutant_dimension,
            "dark_states": {
                "count": self.dark_state_count,
                "eigenvalues": list(self.dark_state_eigenvalues),
            },
            "internal_symmetry": {
                "dimension": self.internal_symmetry_dimension,
                "type": self.internal_symmetry_type,
            },
            "automorphism_generators": [list(p) for p in self.automorphisms],
            "block_sizes": list(self.block_sizes),
        }


def symmetry_report(spec: NetworkSpec, h0: np.ndarray, h1: np.ndarray,
                    tolerance: float = 1e-9, seed: int = 0) -> SymmetryReport:
    comm = commutant(h0, h1, tolerance)
    dark = dark_states(h0, spec.controls)
    anti = internal_symmetry(h0, h1, tolerance)
    autos = graph_automorphisms(spec) if h0.shape[0] == spec.node_count else []
    blocks = decompose(h0, h1, comm, tolerance, seed=seed)
    return SymmetryReport(
        commutant_dimension=comm.dimension,
        dark_state_count=dark.count,
        dark_state_eigenvalues=[float(x) for x in dark.eigenvalues],
        internal_symmetry_dimension=anti.dimension,
        internal_symmetry_type=anti.symmetry_type,
        automorphisms=autos,
        block_sizes=blocks.block_sizes,
    )


def _nullspace(a: np.ndarray, tolerance: float) -> np.ndarray:
    """Columns spanning {x : a x = 0}, SVD-based, threshold relative to s_max."""
    _, s, vt = np.linalg.svd(a, full_matrices=True)
    cols = a.shape[1]
    smax = s.max() if s.size else 0.0
    rank = int(np.sum(s > tolerance * max(smax, 1.0)))
    return vt[rank:].T.conj() if rank < cols else np.zeros((cols, 0))


def _orthonormalize_hermitian(mats: list[np.ndarray]) -> list[np.ndarray]:
    out: list[np.ndarray] = []
    for m in mats:
        v = m.copy()
        for b in out:
            v = v - np.real(np.sum(b.conj() * v)) * b
        norm = np.sqrt(np.real(np.sum(v.conj() * v)))
        if norm > 1e-12:
            out.append(v / norm)
    return out


def _eigen_groups(w: np.ndarray, gap: float):
    """Index ranges [lo, hi) of eigenvalue clusters separated by > gap."""
    groups = []
    lo = 0
    for i in range(1, len(w)):
        if w[i] - w[i - 1] > gap:
            groups.append((lo, i))
            lo = i
    if len(w):
        groups.append((lo, len(w)))
    return groups


def _matrix_rank_of_span(mats: list[np.ndarray], tolerance: float) -> int:
    stack = np.array([m.ravel() for m in mats])
    if not stack.size:
        return 0
    s = np.linalg.svd(stack, compute_uv=False)
    return int(np.sum(s > tolerance * max(s.max(), 1.0)))


def _off_block_residual(h: np.ndarray, projectors: list[np.ndarray]) -> float:
    total = np.zeros_like(h, dtype=complex)
    for p in projectors:
        total += p @ (p.conj().T @ h @ p) @ p.conj().T
    return float(np.abs(h - total).max())


def _weight_classes(sorted_weights: list[float], rtol: float = 1e-12) -> dict[float, int]:
    classes: dict[float, int] = {}
    cls = -1
    prev = None
    for g in sorted_weights:
        if prev is None or abs(g - prev) > rtol * max(abs(g), abs(prev), 1.0):
            cls += 1
        classes[g] = cls
        prev = g
    return classes
