#include <cmath>
#include <complex>
#include <vector>

#include "core/errors.hpp"
#include "core/flowfield.hpp"
#include "core/qfamily.hpp"
#include "doctest.h"

using qortho::Error;
using qortho::ErrorCode;
using qortho::FlowField;
using qortho::GridSample;
using qortho::JacobiParams;
using qortho::Measure;
using qortho::MeasureSpec;
using qortho::QFamily;
using cd = std::complex<double>;

namespace {

Measure make_measure(double alpha, double beta, double lead,
                     std::vector<cd> roots) {
  MeasureSpec s;
  s.params = JacobiParams{alpha, beta};
  s.rho_lead = lead;
  s.rho_roots = std::move(roots);
  return Measure::validate(s);
}

Measure m0() { return make_measure(0.0, 0.0, 1.0, {}); }
Measure m1() { return make_measure(0.0, 0.0, -1.0, {cd(2.0, 0.0)}); }
Measure m2() {
  return make_measure(0.0, 0.0, -1.0, {cd(2.0, 0.0), cd(-2.0, 0.0)});
}

}  // namespace

TEST_CASE("flow field structure for the linear measure") {
  QFamily fam(m1(), 12);
  FlowField fl(fam, 5);

  CHECK(fl.n() == 5);
  CHECK(fl.a() == doctest::Approx(1.0));
  CHECK(fl.b() == doctest::Approx(1.0));
  REQUIRE(fl.sources().size() == 4);     // critical points of Q_5
  REQUIRE(fl.stagnation().size() == 5);  // zeros of L_5

  // Sources interlace the stagnation points.
  for (std::size_t i = 0; i < fl.sources().size(); ++i) {
    CHECK(fl.sources()[i] > fl.stagnation()[i]);
    CHECK(fl.sources()[i] < fl.stagnation()[i + 1]);
  }

  // Velocity vanishes at stagnation points, relative to the ambient scale.
  const auto sc = fl.stagnation_check();
  CHECK(sc.grid_median_speed > 0.0);
  CHECK(sc.ratio <= 1e-9);

  // z V(z) -> n - 1 + a + b.
  CHECK(fl.far_field_coefficient() == doctest::Approx(6.0).epsilon(1e-8));

  // Unit residues at every interior source.
  for (int i = 0; i < 4; ++i) {
    const cd r = fl.residue_at_source(i);
    CHECK(std::abs(r - cd(1.0, 0.0)) <= 1e-6);
  }

  // The partial fraction form of the same field agrees.
  CHECK(fl.cross_check() <= 1e-9);

  // The numerator is proportional to L_n: every root matches a zero of L_n.
  const auto rep = fl.numerator_root_report();
  CHECK(rep.roots.size() == 5);
  CHECK(rep.unmatched.empty());
}

TEST_CASE("smallest admissible degree") {
  QFamily fam(m1(), 6);
  FlowField fl(fam, 2);
  REQUIRE(fl.sources().size() == 1);
  REQUIRE(fl.stagnation().size() == 2);
  CHECK(fl.far_field_coefficient() == doctest::Approx(3.0).epsilon(1e-8));
  CHECK_THROWS_AS(FlowField(fam, 1), Error);
}

TEST_CASE("velocity poles are guarded") {
  QFamily fam(m1(), 8);
  FlowField fl(fam, 4);
  CHECK_THROWS_AS(fl.velocity(cd(1.0, 0.0)), Error);
  try {
    fl.velocity(cd(fl.sources()[0], 0.0));
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::PoleAt);
  }
  // Just outside the guard the field is finite.
  const cd v = fl.velocity(cd(fl.sources()[0] + 1e-6, 0.0));
  CHECK(std::isfinite(v.real()));
  CHECK(std::isfinite(v.imag()));
}

TEST_CASE("grid sampling layout and pole guard") {
  QFamily fam(m1(), 8);
  FlowField fl(fam, 4);

  const auto grid = fl.sample_field(-2.0, 2.0, 5, -1.0, 1.0, 3);
  REQUIRE(grid.size() == 15);
  // im is the outer loop, re the inner one.
  CHECK(grid[0].im == doctest::Approx(-1.0));
  CHECK(grid[0].re == doctest::Approx(-2.0));
  CHECK(grid[1].im == doctest::Approx(-1.0));
  CHECK(grid[1].re == doctest::Approx(-1.0));
  CHECK(grid[5].im == doctest::Approx(0.0));
  CHECK(grid[14].im == doctest::Approx(1.0));
  CHECK(grid[14].re == doctest::Approx(2.0));

  // A 1x1 grid directly on a pole is marked invalid; on a stagnation point
  // it is valid with a negligible speed.
  const double w = fl.sources()[1];
  const auto on_pole = fl.sample_field(w, w, 1, 0.0, 0.0, 1);
  REQUIRE(on_pole.size() == 1);
  CHECK_FALSE(on_pole[0].valid);

  const double s = fl.stagnation()[1];
  const auto on_stag = fl.sample_field(s, s, 1, 0.0, 0.0, 1);
  REQUIRE(on_stag.size() == 1);
  REQUIRE(on_stag[0].valid);
  CHECK(std::abs(on_stag[0].v) <= 1e-8);

  // Degenerate extents return an empty grid.
  CHECK(fl.sample_field(-1.0, 1.0, 0, -1.0, 1.0, 4).empty());
}

TEST_CASE("other measure degrees sit behind the exploratory flag") {
  QFamily fam2(m2(), 10);
  CHECK_THROWS_AS(FlowField(fam2, 6), Error);
  try {
    FlowField(fam2, 6);
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::NotApplicable);
  }

  FlowField fl(fam2, 6, true);
  CHECK_FALSE(fl.note().empty());
  REQUIRE(fl.sources().size() == 5);
  REQUIRE(fl.stagnation().size() == 6);
  CHECK(fl.far_field_coefficient() == doctest::Approx(7.0).epsilon(1e-8));

  // Even symmetry of the measure forces the odd symmetry V(-conj z) = -conj V(z).
  for (const cd z : {cd(0.3, 0.7), cd(-1.4, 0.2), cd(2.2, -0.9)}) {
    const cd v = fl.velocity(z);
    const cd w = fl.velocity(-std::conj(z));
    CHECK(std::abs(w + std::conj(v)) <= 1e-10 * (1.0 + std::abs(v)));
  }

  QFamily fam0(m0(), 8);
  CHECK_THROWS_AS(FlowField(fam0, 4), Error);
  FlowField fl0(fam0, 4, true);
  CHECK(fl0.far_field_coefficient() == doctest::Approx(5.0).epsilon(1e-8));
  CHECK(fl0.cross_check() <= 1e-9);
}
