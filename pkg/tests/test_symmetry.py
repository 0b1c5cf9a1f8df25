import math

import pytest
import sympy as sp

from psifrac import prolong as pr
from psifrac import symmetry as sy
from psifrac.errors import DomainError
from psifrac.fracops import frac_deriv_psi_powers
from psifrac.jets import JetFunction, T, U, W, X
from psifrac.psi import builtin
from psifrac.symmetry import UX, UXX

ALPHA = 0.5
IDENTITY = builtin("identity", 0.0, 2.0)
POWER = builtin("power", 0.5, 2.0)
PSIS = [IDENTITY, POWER]

G_OF = {
    "g=u": U,
    "g=u^p": U**2,
    "g=e^(b u)": sp.exp(U),
    "g=u/(1+u)": U / (1 + U),
}


def _table(case):
    return [c for cs, c in sy.builtin_table(ALPHA) if cs == case]


def _scaling(theta, rho=0, c1=None, xi=X):
    return sy.GeneratorCandidate(
        "candidate",
        reduced=pr.ReducedInfinitesimals(
            ALPHA,
            JetFunction(sp.sympify(xi), (X,)),
            0.0,
            2.0 / ALPHA if c1 is None else c1,
            0.0,
            JetFunction(sp.sympify(theta), (X,)),
            JetFunction(sp.sympify(rho), (X, W)),
        ),
    )


# -- plumbing ----------------------------------------------------------------


def test_grid_probes_are_deterministic():
    g1 = sy.GridSpec.default(IDENTITY)
    g2 = sy.GridSpec.default(IDENTITY)
    assert g1.jet_probes() == g2.jet_probes()
    assert g1.u_probe_coeffs() == g2.u_probe_coeffs()


def test_equation_rejects_constant_g():
    with pytest.raises(DomainError):
        sy.EvolutionEquation("gfbe", ALPHA, IDENTITY, g=JetFunction.of_u(2 + 0 * U))


def test_equation_rejects_unknown_kind():
    with pytest.raises(DomainError):
        sy.EvolutionEquation("wave", ALPHA, IDENTITY)


def test_linear_term_classification():
    # u_xx is linear with a u-free coefficient; g(u) u_x and (u_x)^2 are not
    assert sy.EvolutionEquation.is_linear_term(UXX)
    assert sy.EvolutionEquation.is_linear_term(3 * UX)
    assert not sy.EvolutionEquation.is_linear_term(U * UX)
    assert not sy.EvolutionEquation.is_linear_term(UX**2)


def test_candidate_needs_exactly_one_form():
    red = _scaling(-1).reduced
    with pytest.raises(DomainError):
        sy.GeneratorCandidate("both", reduced=red,
                              general=red.to_general(IDENTITY))
    with pytest.raises(DomainError):
        sy.GeneratorCandidate("neither")


# -- Burgers-type system -------------------------------------------------------


@pytest.mark.parametrize("psi", PSIS, ids=lambda p: p.name)
def test_x_translation_passes_for_any_g(psi):
    cand = _table("arbitrary g")[0]
    for gexpr in (U, sp.exp(U), U**3 + U):
        rep = sy.detsys_gfbe(cand, JetFunction.of_u(gexpr), psi, ALPHA)
        assert rep.passed
        assert max(rep.equations.values()) == 0.0


@pytest.mark.parametrize("psi", PSIS, ids=lambda p: p.name)
@pytest.mark.parametrize("case", ["g=u", "g=u^p"])
def test_published_scaling_rows_pass(psi, case):
    (cand,) = _table(case)
    rep = sy.detsys_gfbe(cand, JetFunction.of_u(G_OF[case]), psi, ALPHA, tol=1e-10)
    assert rep.passed, str(rep)


def test_wrong_theta_sign_fails_coupling_equation():
    cand = _scaling(+1)
    rep = sy.detsys_gfbe(cand, JetFunction.of_u(U), IDENTITY, ALPHA)
    assert not rep.passed
    assert rep.equations["iv"] >= 0.1


@pytest.mark.parametrize("psi", PSIS, ids=lambda p: p.name)
def test_exponential_row_fails_rho_equation(psi):
    # documented defect of the published row: the constant u-shift rho = -1/b
    # is not annihilated by the Riemann-Liouville style derivative, so
    # equation (i) keeps the residual (1/b) w^{-alpha} / Gamma(1-alpha).
    # The row would close under an operator that kills constants instead.
    (cand,) = _table("g=e^(b u)")
    rep = sy.detsys_gfbe(cand, JetFunction.of_u(sp.exp(U)), psi, ALPHA)
    assert not rep.passed
    others = {k: v for k, v in rep.equations.items() if k != "i"}
    assert max(others.values()) <= rep.tol
    w_min = psi(psi.a + 0.2) - psi(psi.a)
    expected = w_min ** (-ALPHA) / math.gamma(1 - ALPHA)
    assert rep.equations["i"] == pytest.approx(expected, rel=1e-10)


@pytest.mark.parametrize("psi", PSIS, ids=lambda p: p.name)
def test_rational_row_fails_coupling_equation(psi):
    # documented defect of the published row: with theta = +1 the u/(1+u)
    # coupling equation does not close (its derivation dropped a constant);
    # every other equation is satisfied exactly.
    (cand,) = _table("g=u/(1+u)")
    rep = sy.detsys_gfbe(cand, JetFunction.of_u(U / (1 + U)), psi, ALPHA)
    assert not rep.passed
    others = {k: v for k, v in rep.equations.items() if k != "iv"}
    assert max(others.values()) <= rep.tol
    assert rep.equations["iv"] > 0.1


def test_omega_equation_rejects_moving_lower_limit():
    cand = sy.GeneratorCandidate(
        "tau(a) != 0",
        reduced=pr.ReducedInfinitesimals(
            ALPHA,
            JetFunction(X, (X,)),
            1.0, 0.0, 0.0,
            JetFunction(sp.Integer(0), (X,)),
            JetFunction(sp.Integer(0), (X, W)),
        ),
    )
    rep = sy.detsys_gfbe(cand, JetFunction.of_u(U), IDENTITY, ALPHA)
    assert rep.equations["v"] >= 1e-3


# -- diffusion system ------------------------------------------------------------


@pytest.mark.parametrize("psi", PSIS, ids=lambda p: p.name)
def test_constant_diffusivity_basis(psi):
    K = JetFunction.of_u(sp.Integer(1) + 0 * U)
    rows = _table("K=1")
    assert len(rows) == 4
    for cand in rows:
        rep = sy.detsys_diffusion(cand, K, psi, ALPHA, tol=1e-10)
        assert rep.passed, f"{cand.label}: {rep}"


@pytest.mark.parametrize("psi", PSIS, ids=lambda p: p.name)
def test_power_law_diffusivity_projective_generator(psi):
    K = JetFunction.of_u((3 * U) ** sp.Rational(-4, 3))
    (cand,) = _table("K=(c1+3u)^(-4/3)")
    rep = sy.detsys_diffusion(cand, K, psi, ALPHA, tol=1e-10)
    assert rep.passed, str(rep)


def test_diffusion_rejects_wrong_projective_theta():
    K = JetFunction.of_u((3 * U) ** sp.Rational(-4, 3))
    cand = _scaling(theta=3 * X, c1=0.0, xi=X**2)  # sign flipped
    rep = sy.detsys_diffusion(cand, K, IDENTITY, ALPHA)
    assert not rep.passed


def test_diffusion_order_range_is_enforced():
    K = JetFunction.of_u(sp.Integer(1) + 0 * U)
    with pytest.raises(DomainError):
        sy.detsys_diffusion(_table("K=1")[0], K, IDENTITY, 2.5)


def test_rho_fixture_solves_heat_compatibility():
    # D^{alpha;psi} rho = rho_xx must hold exactly through the power rule
    rho = sy.diffusion_rho_fixture(ALPHA)
    rho_xx = sp.diff(rho, X, 2)
    for psi in PSIS:
        for t in (psi.a + 0.4, psi.a + 0.9):
            w = psi(t) - psi(psi.a)
            for x in (0.3, 0.8):
                lhs = frac_deriv_psi_powers(rho.subs(X, x), ALPHA, w)
                rhs = float(rho_xx.subs({X: x, W: w}))
                assert lhs == pytest.approx(rhs, rel=1e-12)


# -- classical systems -------------------------------------------------------------


def test_classical_reduced_system_accepts_published_scaling():
    (cand,) = _table("g=u")
    psi = builtin("identity", 0.0, 10.0)
    eq = sy.EvolutionEquation("gfbe", ALPHA, psi, g=JetFunction.of_u(U))
    rep = sy.detsys_zhang_rl(cand, eq, ALPHA, tol=1e-10)
    assert rep.passed, str(rep)


def test_classical_reduced_system_needs_fixed_lower_limit():
    cand = sy.GeneratorCandidate(
        "moving",
        reduced=pr.ReducedInfinitesimals(
            ALPHA,
            JetFunction(X, (X,)),
            1.0, 0.0, 0.0,
            JetFunction(sp.Integer(0), (X,)),
            JetFunction(sp.Integer(0), (X, W)),
        ),
    )
    psi = builtin("identity", 0.0, 10.0)
    eq = sy.EvolutionEquation("gfbe", ALPHA, psi, g=JetFunction.of_u(U))
    with pytest.raises(DomainError):
        sy.detsys_zhang_rl(cand, eq, ALPHA)


def test_classical_expanded_system_accepts_scaling():
    psi = builtin("identity", 0.0, 10.0)
    (cand,) = _table("g=u")
    gen = sy.GeneratorCandidate("X2", general=cand.reduced.to_general(psi))
    rep = sy.detsys_gazizov_rl(gen, JetFunction.of_u(U), ALPHA, tol=1e-10)
    assert rep.passed, str(rep)


def test_classical_expanded_system_exponential_case_fails_honestly():
    # the published exponential-case generator carries the constant
    # eta = -1/b, which a Riemann-Liouville style operator does not kill;
    # the fractional equation keeps the residual (1/b) t^{-alpha}/Gamma(1-alpha)
    inf = pr.Infinitesimals.from_exprs(X, 2 * T / ALPHA, sp.Integer(-1))
    cand = sy.GeneratorCandidate("exp case", general=inf)
    rep = sy.detsys_gazizov_rl(cand, JetFunction.of_u(sp.exp(U)), ALPHA)
    assert not rep.passed
    expected = 0.2 ** (-ALPHA) / math.gamma(1 - ALPHA)
    assert rep.equations["v"] == pytest.approx(expected, rel=1e-10)
    others = {k: v for k, v in rep.equations.items() if k != "v"}
    assert max(others.values()) == 0.0


def test_quadratic_tau_alone_fails_family_equations():
    cand = sy.GeneratorCandidate(
        "t^2 only",
        general=pr.Infinitesimals.from_exprs(0, T**2, 0),
    )
    rep = sy.detsys_gazizov_rl(cand, JetFunction.of_u(U), ALPHA)
    assert rep.equations["family"] > 1e-3


def test_both_classical_methods_agree_on_panel():
    psi = builtin("identity", 0.0, 10.0)
    g = JetFunction.of_u(U)
    eq = sy.EvolutionEquation("gfbe", ALPHA, psi, g=g)
    panel = [
        _scaling(0, c1=0.0, xi=1),
        _scaling(-1),
        _scaling(+1),
        _scaling(-1, c1=1.0),
        _scaling(0, rho=1, c1=0.0, xi=1),
    ]
    panel.append(
        sy.GeneratorCandidate(
            "quadratic tau",
            reduced=pr.ReducedInfinitesimals(
                ALPHA,
                JetFunction(X, (X,)),
                0.0, 2.0 / ALPHA, 0.5,
                JetFunction(sp.Integer(-1), (X,)),
                JetFunction(sp.Integer(0), (X, W)),
            ),
        )
    )
    verdicts = []
    for cand in panel:
        vz = sy.detsys_zhang_rl(cand, eq, ALPHA).passed
        gen = sy.GeneratorCandidate("g", general=cand.reduced.to_general(psi))
        vg = sy.detsys_gazizov_rl(gen, g, ALPHA).passed
        verdicts.append((vz, vg))
    assert all(vz == vg for vz, vg in verdicts)
    assert [vz for vz, _ in verdicts] == [True, True, False, False, False, False]


# -- ansatz solver ------------------------------------------------------------------


def _reduced_tuple(cand):
    r = cand.reduced
    return (
        sp.expand(r.xi.expr),
        round(r.c0, 12),
        round(r.c1, 12),
        round(r.c2, 12),
        sp.expand(r.theta.expr),
        sp.expand(r.rho.expr),
    )


def _spans_equal(basis_a, basis_b):
    sa = {tuple(map(str, _reduced_tuple(c))) for c in basis_a}
    sb = {tuple(map(str, _reduced_tuple(c))) for c in basis_b}
    return sa == sb


@pytest.mark.parametrize(
    "case,kw",
    [
        ("g=u", {}),
        ("g=u^p", {"p": 2.0}),
        ("g=e^(b u)", {"b": 1.0}),
        ("g=u/(1+u)", {}),
    ],
)
def test_solver_recovers_published_burgers_rows(case, kw):
    eq = sy.EvolutionEquation("gfbe", ALPHA, IDENTITY, g=JetFunction.of_u(G_OF[case]))
    basis = sy.solve_ansatz(eq, case, **kw)
    published = _table(case) + _table("arbitrary g")
    assert _spans_equal(basis, published)


def test_solver_recovers_constant_diffusivity_basis():
    eq = sy.EvolutionEquation(
        "diffusion", ALPHA, IDENTITY, K=JetFunction.of_u(sp.Integer(1) + 0 * U)
    )
    basis = sy.solve_ansatz(eq, "K=1")
    assert len(basis) == 4
    published = _table("K=1")
    assert _spans_equal(basis, published)


def test_solver_power_law_theta_scales_inversely_with_p():
    eq = sy.EvolutionEquation("gfbe", ALPHA, IDENTITY, g=JetFunction.of_u(U**3))
    basis = sy.solve_ansatz(eq, "g=u^p", p=3.0)
    thetas = [c.reduced.theta.expr for c in basis if c.reduced.theta.expr != 0]
    assert thetas == [sp.Rational(-1, 3)]


def test_solver_rejects_bad_parameters():
    eq = sy.EvolutionEquation("gfbe", ALPHA, IDENTITY, g=JetFunction.of_u(U**2))
    with pytest.raises(DomainError):
        sy.solve_ansatz(eq, "g=u^p", p=0.5)
    with pytest.raises(DomainError):
        sy.solve_ansatz(eq, "nonsense")
