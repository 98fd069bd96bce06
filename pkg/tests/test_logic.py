"""Tests for localmds.logic: formula syntax, evaluation and the dominating-set formulas."""

from __future__ import annotations

import pytest

from localmds import generators
from localmds.exceptions import FormulaError, GraphError
from localmds.graph import Graph
from localmds.lenzen import phase1
from localmds.logic import (
    And,
    Edge,
    Eq,
    Exists,
    ForAll,
    Implies,
    Less,
    Not,
    build_phi_D,
    build_psi_Dprime,
    defined_set,
    eval_formula,
    format_formula,
    free_variables,
    parse_formula,
    residual_threshold,
    substitute,
)


class TestSyntax:
    """Free variables, substitution and S-expressions."""

    def test_free_variables(self) -> None:
        phi = Exists("y", And((Edge("x", "y"), Less("y", "z"))))
        assert free_variables(phi) == {"x", "z"}

    def test_substitute_respects_binding(self) -> None:
        phi = And((Eq("x", "y"), ForAll("x", Edge("x", "y"))))
        assert substitute(phi, {"x": "w"}) == And((Eq("w", "y"), ForAll("x", Edge("x", "y"))))

    def test_parse(self) -> None:
        phi = parse_formula("(exists y (and (E x y) (not (= x y))))")
        assert phi == Exists("y", And((Edge("x", "y"), Not(Eq("x", "y")))))

    def test_parse_quantifier_block(self) -> None:
        phi = parse_formula("(forall (a b) (implies (E a b) (< a b)))")
        assert phi == ForAll("a", ForAll("b", Implies(Edge("a", "b"), Less("a", "b"))))

    def test_format_groups_quantifier_runs(self) -> None:
        text = "(forall (a b) (implies (E a b) (< a b)))"
        assert format_formula(parse_formula(text)) == text

    def test_builtin_formula_text_reparses(self) -> None:
        phi = build_phi_D(1)
        assert parse_formula(format_formula(phi)) == phi

    @pytest.mark.parametrize(
        "text",
        ["", "(E x)", "(exists x)", "(foo x y)", "(and (E x y)", "(= x y))", "x"],
    )
    def test_parse_errors(self, text: str) -> None:
        with pytest.raises(FormulaError):
            parse_formula(text)


class TestEvaluation:
    """eval_formula and defined_set."""

    def test_atoms(self, p3: Graph) -> None:
        assert eval_formula(p3, Edge("x", "y"), {"x": 0, "y": 1})
        assert not eval_formula(p3, Edge("x", "y"), {"x": 0, "y": 2})
        assert eval_formula(p3, Less("x", "y"), {"x": 0, "y": 2})

    def test_sentence(self, triangle: Graph) -> None:
        all_adjacent = parse_formula("(forall (x y) (or (= x y) (E x y)))")
        assert eval_formula(triangle, all_adjacent)
        assert not eval_formula(generators.path(3), all_adjacent)

    def test_unbound_variable(self, p3: Graph) -> None:
        with pytest.raises(FormulaError) as exc_info:
            eval_formula(p3, Edge("x", "y"), {"x": 0})
        assert exc_info.value.key == "unbound_variable"

    def test_env_outside_graph(self, p3: Graph) -> None:
        with pytest.raises(GraphError):
            eval_formula(p3, Eq("x", "x"), {"x": 7})

    def test_defined_set_degree_two(self, p5: Graph) -> None:
        two_neighbors = parse_formula("(exists (a b) (and (not (= a b)) (E x a) (E x b)))")
        assert defined_set(p5, two_neighbors) == {1, 2, 3}

    def test_defined_set_needs_one_free_variable(self, p3: Graph) -> None:
        with pytest.raises(FormulaError):
            defined_set(p3, Edge("x", "y"))

    def test_empty_graph(self) -> None:
        assert not eval_formula(Graph([]), Exists("x", Eq("x", "x")))
        assert eval_formula(Graph([]), ForAll("x", Not(Eq("x", "x"))))


class TestPlanner:
    """The planner never changes the defined set."""

    @pytest.mark.parametrize(
        "graph",
        [generators.path(5), generators.star(3), generators.cycle(5), generators.complete_bipartite(2, 3)],
    )
    def test_phi_d_planned_equals_naive(self, graph: Graph) -> None:
        phi = build_phi_D(1)
        assert defined_set(graph, phi, plan=True) == defined_set(graph, phi, plan=False)

    def test_count_block_planned_equals_naive(self) -> None:
        g = generators.random_tree(8, seed=2)
        phi = parse_formula(
            "(exists (a b c) (and (not (= a b)) (not (= a c)) (not (= b c)) (E x a) (E x b) (E x c)))"
        )
        assert defined_set(g, phi, plan=True) == defined_set(g, phi, plan=False)


class TestDominatingSetFormulas:
    """phi_D defines Phase 1's set; psi_D' defines the elected set."""

    def test_phi_d_star(self, star7: Graph) -> None:
        assert defined_set(star7, build_phi_D(3)) == {0}

    @pytest.mark.parametrize("seed", range(3))
    def test_phi_d_matches_phase1(self, seed: int) -> None:
        g = generators.random_planar(12, seed=seed)
        assert defined_set(g, build_phi_D(1)) == phase1(g, 1)

    def test_phi_d_grid(self, grid3: Graph) -> None:
        assert defined_set(grid3, build_phi_D(3)) == phase1(grid3, 3) == frozenset()

    def test_phi_d_rejects_small_c(self) -> None:
        with pytest.raises(FormulaError):
            build_phi_D(0)

    def test_residual_threshold(self) -> None:
        assert residual_threshold(3, 3) == 24
        assert residual_threshold(1, 3) == 8

    def test_psi_path(self, p3: Graph) -> None:
        assert defined_set(p3, build_psi_Dprime(3, 3)) == {0, 1}

    def test_psi_grid(self, grid3: Graph) -> None:
        assert defined_set(grid3, build_psi_Dprime(3, 3)) == {0, 1, 2, 3, 4, 5}

    def test_psi_empty_when_phase1_dominates(self, star7: Graph) -> None:
        assert defined_set(star7, build_psi_Dprime(3, 3)) == frozenset()

    def test_psi_rejects_small_t(self) -> None:
        with pytest.raises(FormulaError):
            build_psi_Dprime(3, 2)
