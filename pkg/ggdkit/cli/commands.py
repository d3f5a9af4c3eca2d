import logging
from pathlib import Path

import numpy as np

from ggdkit.cli.common import (
    EXIT_BAD_INPUT,
    EXIT_INVALID,
    EXIT_OK,
    EXIT_UNPROVEN,
    UsageError,
    coefficients,
)
from ggdkit.editpath import (
    final_graph,
    orbit_decomposition,
    path_cost,
    path_cost_lower_bound,
    path_to_matching,
    validate_path,
)
from ggdkit.geometry import geometric_isomorphism, validate_embedding
from ggdkit.instances import (
    blob,
    brute_force_3partition,
    encode_reduction,
    partition_to_matching,
    random_graph,
    tight_edit_path,
    tight_pair,
    wiggle_edit_path,
    wiggle_pair,
)
from ggdkit.matching import matching_cost, validate_matching
from ggdkit.serialization import dump, graph_to_dict, load_graph, load_instance, load_matching, load_path
from ggdkit.solver import (
    SolveBudget,
    brute_force_ggd,
    ggd_decision,
    ggd_exact,
    ggd_lower_bound,
    ggd_upper_bound_assignment,
    ggd_upper_bound_trivial,
)
from ggdkit.validation import ValidationReport, Violation

logger = logging.getLogger(__name__)

# Largest graph, per side, the brute-force cross-check accepts.
ORACLE_MAX_VERTICES = 6


def _load_pair(args, report):
    report.add_input("g", args.g_file)
    report.add_input("h", args.h_file)
    return load_graph(args.g_file), load_graph(args.h_file)


def _budget(args):
    try:
        return SolveBudget(max_nodes=args.budget_nodes, time_limit=args.time_limit)
    except ValueError as e:
        raise UsageError(str(e)) from e


def cmd_ggd(args, report):
    g, h = _load_pair(args, report)
    coeffs = coefficients(args)
    budget = _budget(args)
    code = EXIT_OK

    if args.decision is not None:
        if args.decision < 0:
            raise UsageError("--decision needs a nonnegative threshold")
        incumbent = None
        if args.incumbent:
            report.add_input("incumbent", args.incumbent)
            incumbent = load_matching(args.incumbent)
        decision = ggd_decision(g, h, coeffs, args.decision, budget=budget, incumbent=incumbent)
        report.results.update({"tau": args.decision, "answer": decision.answer, "proven": decision.proven})
        report.solver.update({"nodes_explored": decision.nodes_explored})
        witness = decision.witness
        proven = decision.proven
    else:
        result = ggd_exact(g, h, coeffs, budget=budget)
        assignment, _ = ggd_upper_bound_assignment(g, h, coeffs)
        report.results.update(
            {
                "value": result.value,
                "proven_optimal": result.proven_optimal,
                "lower_bound": ggd_lower_bound(g, h, coeffs),
                "assignment_upper_bound": assignment,
                "trivial_upper_bound": ggd_upper_bound_trivial(g, h, coeffs),
            }
        )
        report.solver.update(
            {"nodes_explored": result.nodes_explored, "pruned": result.pruned, "seconds": result.elapsed}
        )
        witness = result.witness
        proven = result.proven_optimal
        if args.oracle:
            if max(len(g.vertices), len(h.vertices)) > ORACLE_MAX_VERTICES:
                raise UsageError(f"--oracle is limited to {ORACLE_MAX_VERTICES} vertices per graph")
            oracle_value, _ = brute_force_ggd(g, h, coeffs)
            agrees = oracle_value == result.value
            report.results.update({"oracle_value": oracle_value, "oracle_agrees": agrees})
            if not agrees:
                report.messages.append("branch-and-bound and brute force disagree")
                code = EXIT_INVALID

    if witness is not None and args.emit_witness:
        report.add_output("witness", dump(witness.to_dict(), args.emit_witness))
    if not proven:
        logger.warning("search budget exhausted before the answer was proven")
        if args.require_optimal:
            return EXIT_UNPROVEN
    return code


def cmd_bounds(args, report):
    g, h = _load_pair(args, report)
    coeffs = coefficients(args)
    assignment, witness = ggd_upper_bound_assignment(g, h, coeffs)
    report.results.update(
        {
            "lower_bound": ggd_lower_bound(g, h, coeffs),
            "trivial_upper_bound": ggd_upper_bound_trivial(g, h, coeffs),
            "assignment_upper_bound": assignment,
        }
    )
    if args.emit_witness:
        report.add_output("witness", dump(witness.to_dict(), args.emit_witness))
    return EXIT_OK


def _invalid(report, validation):
    report.results["valid"] = False
    report.results["violations"] = validation.to_dict()["violations"]
    report.messages.extend(v.format() for v in validation.violations)


def cmd_price(args, report):
    g, h = _load_pair(args, report)
    coeffs = coefficients(args)

    if args.matching:
        report.add_input("matching", args.matching)
        m = load_matching(args.matching)
        validation = validate_matching(g, h, m)
        if not validation.is_valid:
            _invalid(report, validation)
            return EXIT_BAD_INPUT
        report.results.update(matching_cost(g, h, m, coeffs).to_dict())
        return EXIT_OK

    report.add_input("path", args.path)
    p = load_path(args.path, g)
    validation = validate_path(p)
    if not validation.is_valid:
        _invalid(report, validation)
        return EXIT_BAD_INPUT
    total, final = path_cost(p, coeffs)
    if geometric_isomorphism(final, h, args.tol) is None:
        _invalid(report, ValidationReport((Violation("wrong-target", (), "the path does not end at H"),)))
        return EXIT_BAD_INPUT
    induced = path_to_matching(p, target=h, tol=args.tol)
    report.results.update(
        {
            "total": total,
            "lower_bound": path_cost_lower_bound(p, coeffs),
            "induced_matching_cost": matching_cost(g, h, induced, coeffs).total,
            "orbits": orbit_decomposition(p, coeffs).to_dict(),
        }
    )
    return EXIT_OK


def _write_pair(report, out_dir, g, h):
    report.add_output("g", dump(graph_to_dict(g), out_dir / "g.json"))
    report.add_output("h", dump(graph_to_dict(h), out_dir / "h.json"))


def cmd_gen(args, report):
    out_dir = Path(args.out_dir)
    family = args.family

    if family == "wiggle":
        if args.k < 1:
            raise UsageError("--k must be at least 1")
        _write_pair(report, out_dir, *wiggle_pair())
        report.add_output("path", dump(wiggle_edit_path(args.k).to_dict(), out_dir / "path.json"))
    elif family == "tight":
        coeffs = coefficients(args)
        if not args.d > 0:
            raise UsageError("--d must be positive")
        _write_pair(report, out_dir, *tight_pair(args.d, coeffs))
        report.add_output("path", dump(tight_edit_path(args.d, coeffs).to_dict(), out_dir / "path.json"))
    elif family == "blob":
        try:
            g = blob(args.size, args.height, args.spacing)
        except ValueError as e:
            raise UsageError(str(e)) from e
        report.add_output("blob", dump(graph_to_dict(g), out_dir / "blob.json"))
    elif family == "reduction":
        if not args.instance or args.tau is None:
            raise UsageError("gen reduction needs --instance and --tau")
        coeffs = coefficients(args)
        report.add_input("instance", args.instance)
        inst = load_instance(args.instance)
        g, h, layout = encode_reduction(inst, args.tau, coeffs)
        _write_pair(report, out_dir, g, h)
        report.add_output("layout", dump(layout.to_dict(), out_dir / "layout.json"))
        report.results.update(
            {
                "vertices_g": len(g.vertices),
                "vertices_h": len(h.vertices),
                "edges_g": len(g.edges),
                "edges_h": len(h.edges),
            }
        )
        if args.witness:
            partition = brute_force_3partition(inst)
            report.results["partition"] = [list(t) for t in partition] if partition else None
            if partition is None:
                logger.warning("the instance has no 3-partition; no witness written")
            else:
                m = partition_to_matching(inst, partition, layout, g, h)
                report.results["witness_cost"] = matching_cost(g, h, m, coeffs).total
                report.add_output("witness", dump(m.to_dict(), out_dir / "witness.json"))
    else:
        g_seed, h_seed = np.random.SeedSequence(args.seed).spawn(2)
        options = {"planar": args.planar, "allow_isolated": not args.connected}
        try:
            g = random_graph(args.vertices, args.edges, seed=g_seed, **options)
            h = random_graph(args.vertices, args.edges, seed=h_seed, **options)
        except ValueError as e:
            raise UsageError(str(e)) from e
        _write_pair(report, out_dir, g, h)
    return EXIT_OK


def cmd_validate(args, report):
    report.add_input(args.kind, args.file)
    if args.kind == "graph":
        validation = validate_embedding(load_graph(args.file), tol=args.tol)
    else:
        if not args.g:
            raise UsageError(f"validating a {args.kind} needs --g")
        report.add_input("g", args.g)
        g = load_graph(args.g)
        h = None
        if args.h:
            report.add_input("h", args.h)
            h = load_graph(args.h)
        if args.kind == "matching":
            if h is None:
                raise UsageError("validating a matching needs --h")
            validation = validate_matching(g, h, load_matching(args.file))
        else:
            p = load_path(args.file, g)
            validation = validate_path(p)
            if validation.is_valid and h is not None and geometric_isomorphism(final_graph(p), h, args.tol) is None:
                validation = ValidationReport((Violation("wrong-target", (), "the path does not end at H"),))
    report.results["valid"] = validation.is_valid
    if not validation.is_valid:
        _invalid(report, validation)
        return EXIT_INVALID
    return EXIT_OK


COMMANDS = {
    "ggd": cmd_ggd,
    "bounds": cmd_bounds,
    "price": cmd_price,
    "gen": cmd_gen,
    "validate": cmd_validate,
}
