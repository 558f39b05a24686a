// Acceptance suite: one line per criterion, nonzero exit on any failure.
// Tolerances and grid sizes are fixed here; the library carries the same
// numbers in its check registry.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <string>
#include <vector>

#include "catransport/associated_bundle.hpp"
#include "catransport/checks.hpp"
#include "catransport/decorated_transport.hpp"
#include "catransport/finite_cat.hpp"
#include "catransport/fixtures.hpp"

using namespace catransport;

namespace {

struct Criterion {
  int id;
  std::string label;
  bool pass = true;
  double worst = 0;
  std::string detail;
  double seconds = 0;
};

std::vector<Criterion> g_results;

void run_criterion(int id, const std::string& label, double time_budget,
                   const std::function<void(Criterion&)>& body) {
  Criterion c{id, label};
  const auto start = std::chrono::steady_clock::now();
  try {
    body(c);
  } catch (const std::exception& e) {
    c.pass = false;
    c.detail = std::string("exception: ") + e.what();
  }
  c.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  if (c.seconds > time_budget) {
    c.pass = false;
    c.detail += " [over time budget " + std::to_string(time_budget) + "s]";
  }
  std::printf("%s criterion %2d: %s (worst=%.3g, %.2fs)%s\n",
              c.pass ? "PASS" : "FAIL", id, label.c_str(), c.worst, c.seconds,
              c.detail.empty() ? "" : ("  " + c.detail).c_str());
  std::fflush(stdout);
  g_results.push_back(c);
}

void require(Criterion& c, bool ok, double value, const std::string& what) {
  c.worst = std::max(c.worst, value);
  if (!ok) {
    c.pass = false;
    if (!c.detail.empty()) c.detail += "; ";
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.3g", value);
    c.detail += what + "=" + buf;
  }
}

void require_below(Criterion& c, double value, double tol, const std::string& what) {
  require(c, value <= tol, value, what);
}

void require_time(Criterion& c, double seconds, double budget, const std::string& what) {
  if (seconds >= budget) {
    c.pass = false;
    c.detail += what + " took " + std::to_string(seconds) + "s";
  }
}

CrossedModule finite_conj(GroupModelPtr g) {
  CrossedModule cm;
  cm.name = "conj(" + g->name() + ")";
  cm.G = g;
  cm.H = g;
  const GroupModel* gm = g.get();
  cm.alpha = [gm](const GroupElement& a, const GroupElement& h) {
    return gm->multiply(gm->multiply(a, h), gm->inverse(a));
  };
  cm.alpha_alg = [](const GroupElement&, const AlgebraElement& z) { return z; };
  cm.tau = [](const GroupElement& h) { return h; };
  cm.tau_alg = [](const AlgebraElement& z) { return z; };
  return cm;
}

CrossedModule finite_z2_into_z4() {
  CrossedModule cm;
  cm.name = "Z2->Z4";
  cm.G = cyclic_model(4);
  cm.H = cyclic_model(2);
  const GroupModel* gm = cm.G.get();
  cm.alpha = [](const GroupElement&, const GroupElement& h) { return h; };
  cm.alpha_alg = [](const GroupElement&, const AlgebraElement& z) { return z; };
  cm.tau = [gm](const GroupElement& h) { return GroupElement(gm, 2 * h.index()); };
  cm.tau_alg = [gm](const AlgebraElement&) { return gm->zero_algebra(); };
  return cm;
}

double order_of(const std::vector<ConvergenceRow>& rows) { return fitted_order(rows); }

}  // namespace

int main() {
  const std::uint64_t seed = 20260810;

  run_criterion(1, "crossed-module axioms and exchange law on built-ins", 6.0,
                [&](Criterion& c) {
    std::vector<CrossedModule> builtins;
    builtins.push_back(conjugation_module(so2_model()));
    builtins.push_back(conjugation_module(so3_model()));
    builtins.push_back(abelian_module(so2_model(), 2));
    builtins.push_back(abelian_module(so3_model(), 3));
    builtins.push_back(finite_z4_z2_module());
    builtins.push_back(double_module(conjugation_module(so3_model())).cm2);
    for (const CrossedModule& cm : builtins) {
      const auto t0 = std::chrono::steady_clock::now();
      require_below(c, check_peiffer(cm, 100, seed), 1e-10, cm.name + " peiffer");
      require_below(c, check_exchange_law(cm, 100, seed), 1e-10, cm.name + " exchange");
      const double dt =
          std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
      require_time(c, dt, 1.0, cm.name);
    }
  });

  run_criterion(2, "categorical group round trip on finite crossed modules", 5.0,
                [&](Criterion& c) {
    for (const CrossedModule& cm :
         {finite_z4_z2_module(), finite_z2_into_z4(), finite_conj(s3_model()),
          finite_conj(cyclic_model(8))}) {
      auto witness = finite::check_catgrp_roundtrip(cm);
      require(c, !witness.has_value(), witness ? 1.0 : 0.0,
              cm.name + (witness ? (": " + *witness) : ""));
    }
  });

  run_criterion(3, "reparametrization invariance of omega_(A,B)", 2.0,
                [&](Criterion& c) {
    const Scenario& sc = scenario("so3_conj");
    std::vector<ConvergenceRow> ladder =
        convergence_study("reparam", sc, {{100, 8}, {200, 8}, {400, 8}}, seed);
    require_below(c, ladder.back().residual, 1e-6, "residual@400");
    const double order = order_of(ladder);
    require(c, std::abs(order - 2.0) <= 0.3, order, "order");
  });

  run_criterion(4, "backtrack-erasure invariance of omega_(A,B)", 1.0,
                [&](Criterion& c) {
    for (const char* name : {"so2_area", "so3_conj"}) {
      for (const ReportRow& r : run_check("backtrack", scenario(name), 128, 8, seed))
        require_below(c, r.residual, 1e-12, r.check + "@" + name);
    }
  });

  run_criterion(5, "thin-homotopy triviality on an 80x200 wiggle family", 5.0,
                [&](Criterion& c) {
    const Scenario& sc = scenario("so3_conj");
    SampledPath line = fixtures::thin_line_path(sc, 200);
    ThinHomotopyReport rep = check_thin_homotopy(sc, line, fixtures::thin_wiggle(), 80);
    require_below(c, rep.initial_drift, 1e-9, "initial drift");
    require_below(c, rep.max_minor, 1e-7, "lifted-partial minors");
    for (const ReportRow& r : run_check("thin", sc, 200, 80, seed))
      if (r.check == "thin_holonomy")
        require_below(c, r.residual, 1e-9, "decorated holonomy");
  });

  run_criterion(6, "composition laws of the surface functionals w_C and w_C0", 1.0,
                [&](Criterion& c) {
    for (const ReportRow& r : run_check("wc_compose", scenario("double"), 48, 24, seed))
      require_below(c, r.residual, 1e-12, r.check);
  });

  run_criterion(7, "categorical connection laws for the C- and Phi-lifts", 3.0,
                [&](Criterion& c) {
    const Scenario& sc = scenario("so3_conj");
    SampledPath g1 = fixtures::base_path(sc, 96);
    SampledPath g2 = fixtures::second_path(sc, 96);
    DecoratedLifter with_c = [&sc](const SampledPath& b, const BundlePoint& u) {
      return cat_connection_lift_C(sc, b, u);
    };
    HorliftAxiomReport rep = check_horlift_axioms(sc, with_c, g1, g2, 20, seed);
    require_below(c, rep.functoriality, 1e-12, "functoriality");
    require_below(c, rep.rigid, 1e-11, "equivariance");
    std::vector<ConvergenceRow> ladder =
        convergence_study("phi_agreement", sc, {{50, 8}, {100, 8}, {200, 8}}, seed);
    const double order = order_of(ladder);
    require(c, std::abs(order - 2.0) <= 0.3, order, "phi order");
  });

  run_criterion(8, "decorated and doubly decorated algebra", 4.0, [&](Criterion& c) {
    const Scenario& sc = scenario("double");
    for (const char* check : {"dec_actions", "doubly_actions", "kappa"})
      for (const ReportRow& r : run_check(check, sc, 48, 16, seed))
        require_below(c, r.residual, 1e-10, r.check);
  });

  run_criterion(9, "surface horizontal lift self-consistency", 10.0,
                [&](Criterion& c) {
    const Scenario& sc = scenario("so3_conj");
    std::vector<ConvergenceRow> ladder = convergence_study(
        "surface_lift", sc, {{25, 25}, {50, 50}, {100, 100}}, seed);
    require_below(c, ladder.back().residual, 1e-5, "residual@100x100");
    const double order = order_of(ladder);
    require(c, std::abs(order - 2.0) <= 0.3, order, "order");
  });

  run_criterion(10, "finite categorical bundles and planted counterexamples", 5.0,
                [&](Criterion& c) {
    using namespace catransport::finite;
    auto z4_ptr = cyclic_model(4);
  const auto& z4 = static_cast<const FiniteGroupModel&>(*z4_ptr);
    auto q8_ptr = q8_model();
  const auto& q8 = static_cast<const FiniteGroupModel&>(*q8_ptr);
    auto ok = [&](const std::optional<std::string>& w, const std::string& what) {
      require(c, !w.has_value(), w ? 1.0 : 0.0, what + (w ? (": " + *w) : ""));
    };
    ok(build_cg2(z4, {0, 2}).check_axioms(), "cg2 Z4/Z2");
    ok(build_cg2(q8, {0, 1}).check_axioms(), "cg2 Q8/center");
    ok(check_principal_axioms(cg2_quotient_bundle(z4, {0, 2})), "bundle Z4/Z2");
    ok(check_principal_axioms(cg2_quotient_bundle(q8, {0, 1})), "bundle Q8/center");
    ok(check_principal_axioms(example_p1_bundle(z4.table(), 3)), "example P1");
    auto z3_ptr = cyclic_model(3);
  const auto& z3 = static_cast<const FiniteGroupModel&>(*z3_ptr);
    ok(check_principal_axioms(example_p2_bundle(z3.table(), 2)), "example P2");
    ok(check_reduction(decorated_reduction_fixture(finite_z4_z2_module())),
       "decorated reduction");
    // planted counterexamples must be caught with witnesses
    auto broken = check_principal_axioms(broken_fiber_bundle(z4.table()));
    require(c, broken.has_value() && broken->find("not transitive") != std::string::npos,
            broken ? 0.0 : 1.0, "broken fiber detection");
    ReductionData bad = decorated_reduction_fixture(finite_z4_z2_module());
    std::swap(bad.beta_mor[0], bad.beta_mor[1]);
    require(c, check_reduction(bad).has_value(), check_reduction(bad) ? 0.0 : 1.0,
            "broken beta detection");
    bool centrality_caught = false;
    try {
      auto s3_ptr = s3_model();
  const auto& s3 = static_cast<const FiniteGroupModel&>(*s3_ptr);
      (void)build_cg2(s3, {0, 2});
    } catch (const StructureError&) {
      centrality_caught = true;
    }
    require(c, centrality_caught, centrality_caught ? 0.0 : 1.0, "centrality detection");
  });

  run_criterion(11, "associated-bundle transport on SO(2) acting on R^2", 1.0,
                [&](Criterion& c) {
    for (const ReportRow& r : run_check("assoc", scenario("so2_assoc"), 96, 8, seed))
      require_below(c, r.residual, 1e-11, r.check);
  });

  int failures = 0;
  for (const Criterion& c : g_results)
    if (!c.pass) ++failures;
  std::printf("%d/%zu acceptance criteria passed\n", static_cast<int>(g_results.size()) - failures,
              g_results.size());
  return failures;
}
