"""Analysis pipeline and table regeneration.

analyze() runs the detectors and the closure over one network and bundles
the results with consistency flags. reproduce_table() recomputes a bundled
reference table from scratch and diffs it row by row; branch-table rows are
closed in exact mode (their data is integer, so ranks are certified), with
a float cross-check recorded per row.
"""

from __future__ import annotations

import math
import time
from dataclasses import dataclass, field

import numpy as np

from . import reference
from .analytic import (VERIFY_TOL, bethe_symmetric_kappas, heisenberg_controllable,
                       star_controllable_conjecture, xx_controllable)
from .hamiltonian import second_excitation_chain, single_excitation
from .lie import lie_closure, verdict
from .network import NetworkSpec, StarDescriptor, make_chain, make_star
from .symmetry import (commutant, dark_states, decompose, graph_automorphisms,
                       internal_symmetry)

SYMMETRY_TOL = 1e-9
DARK_TOL = 1e-8


@dataclass
class AnalysisReport:
    network: dict
    subspace_dimension: int
    closure: dict
    commutant_dimension: int
    dark_states: dict
    internal_symmetry: dict
    automorphisms: dict
    block_sizes: list[int]
    analytic: dict
    consistency: dict
    timings: dict
    seed: int
    tolerance: float

    def to_dict(self) -> dict:
        return {
            "network": self.network,
            "subspace_dimension": self.subspace_dimension,
            "closure": self.closure,
            "commutant_dimension": self.commutant_dimension,
            "dark_states": self.dark_states,
            "internal_symmetry": self.internal_symmetry,
            "automorphisms": self.automorphisms,
            "block_sizes": self.block_sizes,
            "analytic": self.analytic,
            "consistency": self.consistency,
            "timings": self.timings,
            "seed": self.seed,
            "tolerance": self.tolerance,
        }


def analyze(spec: NetworkSpec, tolerance: float = 1e-6, mode: str = "float",
            seed: int = 0, skip_closure_above: int = 40) -> AnalysisReport:
    """Full pipeline: subspace Hamiltonians, detectors, closure, predicates."""
    timings = {}
    t0 = time.perf_counter()
    sub = single_excitation(spec)
    h0, h1 = sub.h0, sub.h1
    d = sub.dimension
    timings["hamiltonian"] = time.perf_counter() - t0

    t0 = time.perf_counter()
    comm = commutant(h0, h1, SYMMETRY_TOL)
    dark = dark_states(h0, spec.controls, DARK_TOL)
    anti = internal_symmetry(h0, h1, SYMMETRY_TOL)
    autos = graph_automorphisms(spec)
    blocks = decompose(h0, h1, comm, SYMMETRY_TOL, seed=seed)
    timings["symmetry"] = time.perf_counter() - t0

    t0 = time.perf_counter()
    closure_skipped = d > skip_closure_above
    if closure_skipped:
        closure_info = {"skipped": True,
                        "reason": f"d = {d} exceeds cap {skip_closure_above}"}
        vd = None
    else:
        res = lie_closure([h0, h1], mode=mode, tolerance=tolerance)
        vd = verdict(res, d)
        closure_info = {
            "skipped": False,
            "dimension": res.dimension,
            "full_dimension": d * d,
            "controllable": vd.controllable,
            "note": vd.note,
            "mode": res.mode,
            "commutators_evaluated": res.commutators_evaluated,
            "saturated": res.saturated,
        }
    timings["closure"] = time.perf_counter() - t0

    analytic = _analytic_predictions(spec)

    consistency = {}
    consistency["commutant_vs_dark_states"] = \
        comm.has_external_symmetry == (dark.count > 0)
    if vd is not None and analytic.get("predicted_controllable") is not None:
        consistency["closure_vs_predicate"] = \
            vd.controllable == analytic["predicted_controllable"]
    else:
        consistency["closure_vs_predicate"] = None
    if vd is not None:
        bound = sum(b * b for b in blocks.block_sizes)
        consistency["closure_within_block_bound"] = vd.dimension <= bound
        consistency["block_bound_saturated"] = vd.dimension == bound
    else:
        consistency["closure_within_block_bound"] = None
        consistency["block_bound_saturated"] = None

    return AnalysisReport(
        network={
            "nodes": spec.node_count,
            "edges": [[m, n, g] for m, n, g in spec.edges],
            "kappa": spec.kappa,
            "controls": list(spec.controls),
            "topology": spec.topology,
        },
        subspace_dimension=d,
        closure=closure_info,
        commutant_dimension=comm.dimension,
        dark_states={
            "count": dark.count,
            "eigenvalues": [float(x) for x in dark.eigenvalues],
            "max_residual": float(dark.residuals.max()) if dark.count else 0.0,
        },
        internal_symmetry={
            "dimension": anti.dimension,
            "has_invertible_solution": anti.has_internal_symmetry,
            "type": anti.symmetry_type,
        },
        automorphisms={"count": len(autos), "generators": [list(p) for p in autos]},
        block_sizes=list(blocks.block_sizes),
        analytic=analytic,
        consistency=consistency,
        timings=timings,
        seed=seed,
        tolerance=tolerance,
    )


def _analytic_predictions(spec: NetworkSpec) -> dict:
    out: dict = {"applicable": False}
    uniform = len({g for _, _, g in spec.edges}) == 1 and \
        all(abs(g - 1.0) < 1e-12 for _, _, g in spec.edges)
    single = len(spec.controls) == 1
    if spec.is_chain() and uniform and single:
        N = spec.node_count
        k = spec.controls[0]
        out["applicable"] = True
        out["family"] = "uniform-chain"
        kap = spec.kappa
        if abs(kap) < 1e-12:
            out["predicted_controllable"] = xx_controllable(N, k)
            out["predicate"] = f"gcd(N+1, k) = gcd({N + 1}, {k})"
        elif abs(abs(kap) - 1.0) < 1e-12:
            out["predicted_controllable"] = heisenberg_controllable(N, k)
            out["predicate"] = f"gcd(N, 2k-1) = gcd({N}, {2 * k - 1})"
        else:
            out["predicted_controllable"] = None
        k_fold = min(k, N + 1 - k)  # mirror image has the same symmetries
        enum = bethe_symmetric_kappas(N, k_fold)
        out["symmetric_kappas"] = [s.kappa for s in enum.solutions]
        out["every_kappa_symmetric"] = enum.all_kappa
        if enum.all_kappa:
            out["kappa_is_symmetric"] = True
        else:
            out["kappa_is_symmetric"] = any(
                abs(spec.kappa - s.kappa) < 1e-9 for s in enum.solutions)
    elif spec.topology == "star" and uniform and single and spec.star_lengths:
        out["applicable"] = True
        out["family"] = "uniform-star"
        if spec.controls == (1,) and abs(spec.kappa) < 1e-12:
            out["predicted_controllable"] = \
                star_controllable_conjecture(spec.star_lengths)
            out["predicate"] = "pairwise coprime branch lengths"
        else:
            out["predicted_controllable"] = None
    else:
        out["predicted_controllable"] = None
    return out


@dataclass
class TableReport:
    table_id: str
    rows: list[dict]
    all_match: bool

    def to_dict(self) -> dict:
        return {"table_id": self.table_id, "reference_version": reference.REFERENCE_VERSION,
                "rows": self.rows, "all_match": self.all_match}

    def to_text(self) -> str:
        lines = [f"table {self.table_id} (reference {reference.REFERENCE_VERSION})"]
        for row in self.rows:
            lines.append(_row_text(self.table_id, row))
        lines.append(f"all rows match: {self.all_match}")
        return "\n".join(lines)


def _row_text(table_id: str, row: dict) -> str:
    if table_id == "sym":
        comp = ", ".join(f"{s['kappa']!r}{'' if s['verified'] else '!'}"
                         for s in row["computed"])
        mark = "ok" if row["match"] else "MISMATCH"
        extra = f" extra={row['extra_kappas']!r}" if row["extra_kappas"] else ""
        return (f"  N={row['N']} k={row['k']}: computed [{comp or 'none'}] "
                f"reference {row['reference_kappas']} {mark}{extra}")
    if table_id in ("xx-branch", "heisen-branch"):
        mark = "ok" if row["match"] else "MISMATCH"
        alt = ""
        if not row["match"]:
            alt = f" alternative_controls={row['alternative_controls']}"
        return (f"  {row['lengths']}: dim={row['dim']} symmetry={row['symmetry']} "
                f"controllable={row['controllable']} reference=(dim={row['reference_dim']}, "
                f"symmetry={row['reference_symmetry']}) {mark}{alt}")
    if table_id == "fig2-examples":
        mark = "ok" if row["match"] else "MISMATCH"
        return (f"  ell={row['ell']}: dim={row['dim']} commutant={row['commutant_dimension']} "
                f"reference dim={row['reference_dim']} {mark}")
    return f"  {row}"


def reproduce_table(table_id: str, seed: int = 0) -> TableReport:
    if table_id == "sym":
        return _table_sym()
    if table_id == "xx-branch":
        return _table_branch(reference.XX_BRANCH_TABLE, kappa=0.0, table_id=table_id)
    if table_id == "heisen-branch":
        return _table_branch(reference.HEISENBERG_BRANCH_TABLE, kappa=1.0,
                             table_id=table_id)
    if table_id == "fig2-examples":
        return _table_fig2()
    raise ValueError(f"unknown table id {table_id!r}")


def _table_sym() -> TableReport:
    rows = []
    for ref in reference.SYMMETRIC_KAPPA_TABLE:
        N, k = ref["N"], ref["k"]
        enum = bethe_symmetric_kappas(N, k)
        computed = [{"j": s.mode_index, "theta": s.theta, "kappa": s.kappa,
                     "verified": s.verified, "residual": s.residual}
                    for s in enum.solutions]
        if ref["thetas"] is None:
            match = not enum.solutions and not enum.all_kappa
            formula = []
        else:
            # kappa recomputed from the reference theta list; a reference row
            # is sound iff its printed kappas equal these as a multiset
            formula = []
            for num_den in ref["thetas"]:
                th = reference.theta_value(num_den)
                s_pole = math.sin((k - 1) * th)
                formula.append(math.sin(k * th) / s_pole if abs(s_pole) > 1e-12
                               else float("nan"))
            match = _multiset_close(ref["kappa_values"], formula, 1e-9) and \
                all(c["verified"] for c in computed)
        ref_set = ref["kappa_values"]
        extra = [c["kappa"] for c in computed
                 if not any(abs(c["kappa"] - rv) < 1e-9 for rv in ref_set)]
        rows.append({
            "N": N, "k": k,
            "reference_thetas": ref["thetas"],
            "reference_kappas": ref["kappas"],
            "reference_kappa_values": ref["kappa_values"],
            "computed": computed,
            "kappas_from_reference_thetas": formula,
            "extra_kappas": extra,
            "match": bool(match),
        })
    return TableReport("sym", rows, all(r["match"] for r in rows))


def _branch_metrics(lengths, kappa, control_node: int):
    spec = make_star(StarDescriptor(tuple(lengths)), kappa)
    if control_node != 1:
        spec = NetworkSpec(node_count=spec.node_count, edges=spec.edges,
                           kappa=spec.kappa, controls=(control_node,),
                           topology="star", star_lengths=spec.star_lengths)
    sub = single_excitation(spec)
    exact = lie_closure([sub.h0, sub.h1], mode="exact")
    dark = dark_states(sub.h0, spec.controls, DARK_TOL)
    vd = verdict(exact, sub.dimension)
    return spec, sub, exact.dimension, dark.count > 0, vd.controllable


def _table_branch(table, kappa: float, table_id: str) -> TableReport:
    rows = []
    for ref in table:
        lengths = ref["lengths"]
        spec, sub, dim, has_sym, controllable = _branch_metrics(lengths, kappa, 1)
        float_dim = lie_closure([sub.h0, sub.h1], mode="float").dimension
        match = (dim == ref["dim"] and has_sym == ref["symmetry"]
                 and controllable == ref["controllable"])
        alternatives = None
        if not match:
            alternatives = []
            for node in range(1, spec.node_count + 1):
                _, _, dim_a, sym_a, ctrl_a = _branch_metrics(lengths, kappa, node)
                if (dim_a == ref["dim"] and sym_a == ref["symmetry"]
                        and ctrl_a == ref["controllable"]):
                    alternatives.append(node)
        rows.append({
            "lengths": list(lengths), "N": ref["N"],
            "dim": dim, "symmetry": has_sym, "controllable": controllable,
            "float_dim": float_dim, "float_exact_agree": float_dim == dim,
            "reference_dim": ref["dim"], "reference_symmetry": ref["symmetry"],
            "reference_controllable": ref["controllable"],
            "match": bool(match), "alternative_controls": alternatives,
        })
    return TableReport(table_id, rows, all(r["match"] for r in rows))


def fig2_pair(ell: int):
    """Drift of the n=2 sector of the uniform 5-chain with the first ell
    basis states controlled."""
    spec = make_chain(5, "uniform", 0.0, controls=(1,))
    sub = second_excitation_chain(spec)
    h1 = np.diag([1.0] * ell + [0.0] * (sub.dimension - ell))
    return sub.h0, h1


def _table_fig2() -> TableReport:
    rows = []
    for ref in reference.FIG2_EXAMPLES:
        ell = ref["ell"]
        h0, h1 = fig2_pair(ell)
        exact = lie_closure([h0, h1], mode="exact")
        float_dim = lie_closure([h0, h1], mode="float").dimension
        comm = commutant(h0, h1, SYMMETRY_TOL)
        vd = verdict(exact, h0.shape[0])
        match = (exact.dimension == ref["dim"]
                 and comm.has_external_symmetry == ref["symmetry"]
                 and vd.controllable == ref["controllable"])
        rows.append({
            "ell": ell, "dim": exact.dimension, "float_dim": float_dim,
            "float_exact_agree": float_dim == exact.dimension,
            "commutant_dimension": comm.dimension,
            "symmetry": comm.has_external_symmetry,
            "controllable": vd.controllable,
            "reference_dim": ref["dim"], "reference_symmetry": ref["symmetry"],
            "reference_controllable": ref["controllable"],
            "match": bool(match),
        })
    return TableReport("fig2-examples", rows, all(r["match"] for r in rows))


def _multiset_close(a, b, tol: float) -> bool:
    if len(a) != len(b):
        return False
    bb = list(b)
    for x in a:
        hit = next((i for i, y in enumerate(bb)
                    if math.isfinite(y) and abs(x - y) < tol), None)
        if hit is None:
            return False
        bb.pop(hit)
    return True
