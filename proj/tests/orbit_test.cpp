#include <doctest.h>

#include <sstream>
#include <stdexcept>

#include "mmm/orbit.hpp"
#include "oracles.hpp"

using mmm::iterate_orbit;
using mmm::MedianDirection;
using mmm::MultisetState;
using mmm::OrbitRecord;
using mmm::Rational;
using mmm::Variant;

namespace {

std::vector<Rational> rat_vec(std::initializer_list<Rational> xs) { return xs; }

}  // namespace

TEST_CASE("median of sorted multisets") {
  CHECK(MultisetState(rat_vec({Rational(0), Rational(1, 11), Rational(1)})).median() ==
        Rational(1, 11));
  // The four points x_1..x_4 of the x = 1/11 orbit; M_4 = x/2.
  MultisetState four(rat_vec({Rational(-9, 11), Rational(0), Rational(1, 11), Rational(1)}));
  CHECK(four.median() == Rational(1, 22));
  CHECK(four.median() == oracle::median(four.elements()));
  CHECK(MultisetState(rat_vec({Rational(-7, 5)})).median() == Rational(-7, 5));
  CHECK_THROWS_AS(MultisetState().median(), std::domain_error);
}

TEST_CASE("next_point implements both step rules") {
  for (const Rational& x : {Rational(1, 3), Rational(1, 2), Rational(7, 9), Rational(-2, 5),
                            Rational(5, 2)}) {
    MultisetState s(rat_vec({x, Rational(1)}));
    CHECK(s.next_point(Variant::Akiyama) == Rational(0));
  }
  MultisetState t(rat_vec({Rational(0), Rational(2, 3), Rational(1)}));
  CHECK(t.next_point(Variant::Akiyama) == Rational(2) * Rational(2, 3) - Rational(1));
  MultisetState h(rat_vec({Rational(1, 2), Rational(1), Rational(0), Rational(0)}));
  CHECK(h.next_point(Variant::Akiyama) == Rational(-1, 2));
  // Original rule uses coefficient n+1.
  MultisetState o(rat_vec({Rational(0), Rational(1, 2), Rational(1)}));
  CHECK(o.next_point(Variant::Original) == Rational(4) * Rational(1, 2) - Rational(3, 2));
}

TEST_CASE("insert keeps order, size, and the cached sum") {
  MultisetState s(rat_vec({Rational(1, 3), Rational(1)}));
  s.insert(Rational(0));
  CHECK(s.elements() == rat_vec({Rational(0), Rational(1, 3), Rational(1)}));

  MultisetState z(rat_vec({Rational(0)}));
  z.insert(Rational(0));
  CHECK(z.size() == 2);
  CHECK(z.sum() == Rational(0));

  MultisetState w(rat_vec({Rational(1, 11), Rational(1)}));
  w.insert(Rational(-9, 11));
  CHECK(w.elements() == rat_vec({Rational(-9, 11), Rational(1, 11), Rational(1)}));
  CHECK(w.sum() == Rational(3, 11));
  CHECK(w.sum() == oracle::sum(w.elements()));
}

TEST_CASE("orbit of [1/2, 1] stabilizes at tau = 7 with limit 0") {
  OrbitRecord rec = iterate_orbit({Rational(1, 2), Rational(1)}, Variant::Akiyama, 1000);
  REQUIRE(rec.resolved());
  CHECK(rec.stabilized->tau == 7);
  CHECK(rec.stabilized->limit == Rational(0));
  CHECK(rec.points == rat_vec({Rational(1, 2), Rational(1), Rational(0), Rational(0),
                               Rational(-1, 2), Rational(-1)}));
  CHECK(rec.direction == MedianDirection::NonIncreasing);
}

TEST_CASE("orbit of [x, x] stabilizes at tau = 4 with limit x") {
  const Rational x(5, 7);
  OrbitRecord rec = iterate_orbit({x, x}, Variant::Akiyama, 1000);
  REQUIRE(rec.resolved());
  CHECK(rec.stabilized->tau == 4);
  CHECK(rec.stabilized->limit == x);
  CHECK(rec.points == rat_vec({x, x, Rational(0)}));
  CHECK(rec.direction == MedianDirection::Constant);
}

TEST_CASE("orbit of [0, x] stabilizes at 0") {
  const Rational x(3, 4);
  OrbitRecord rec = iterate_orbit({Rational(0), x}, Variant::Akiyama, 1000);
  REQUIRE(rec.resolved());
  CHECK(rec.stabilized->tau == 5);
  CHECK(rec.stabilized->limit == Rational(0));
  CHECK(rec.points == rat_vec({Rational(0), x, Rational(0), -x}));
}

TEST_CASE("orbit of a singleton") {
  const Rational x(2, 3);
  OrbitRecord rec = iterate_orbit({x}, Variant::Akiyama, 1000);
  REQUIRE(rec.resolved());
  CHECK(rec.stabilized->tau == 5);
  CHECK(rec.stabilized->limit == Rational(0));
  CHECK(rec.points == rat_vec({x, Rational(0), Rational(0), -x}));
}

TEST_CASE("orbit of [2/21, 1] stabilizes at tau = 39 with limit -4/3") {
  OrbitRecord rec = iterate_orbit({Rational(2, 21), Rational(1)}, Variant::Akiyama, 100000);
  REQUIRE(rec.resolved());
  CHECK(rec.stabilized->tau == 39);
  CHECK(rec.stabilized->limit == Rational(-4, 3));
}

TEST_CASE("iterate_orbit argument validation") {
  CHECK_THROWS_AS(iterate_orbit({}, Variant::Akiyama, 10), std::invalid_argument);
  CHECK_THROWS_AS(iterate_orbit({Rational(1), Rational(2)}, Variant::Akiyama, 2),
                  std::invalid_argument);
}

TEST_CASE("cap exhaustion is the unresolved status, not an error") {
  OrbitRecord rec = iterate_orbit({Rational(2, 21), Rational(1)}, Variant::Akiyama, 10);
  CHECK(!rec.resolved());
  CHECK(rec.points.size() == 10);
  CHECK(rec.cap == 10);
}

TEST_CASE("records never pad the constant tail") {
  OrbitRecord rec = iterate_orbit({Rational(1, 2), Rational(1)}, Variant::Akiyama, 100000);
  CHECK(rec.points.size() == 6);  // detection index, well before the cap
  CHECK(rec.medians.size() == 5);
}

TEST_CASE("median direction classification") {
  OrbitRecord dec = iterate_orbit({Rational(1, 11), Rational(1)}, Variant::Akiyama, 1000);
  CHECK(mmm::median_direction(dec) == MedianDirection::NonIncreasing);
  OrbitRecord flat = iterate_orbit({Rational(3, 5), Rational(3, 5)}, Variant::Akiyama, 1000);
  CHECK(mmm::median_direction(flat) == MedianDirection::Constant);
  // Negated initial data mirrors the orbit, so the medians climb.
  OrbitRecord inc = iterate_orbit({Rational(-1, 11), Rational(-1)}, Variant::Akiyama, 1000);
  CHECK(mmm::median_direction(inc) == MedianDirection::NonDecreasing);
  CHECK(inc.points[0] == Rational(-1, 11));  // initial points stay in input order
}

TEST_CASE("repeated point certificate") {
  OrbitRecord rec = iterate_orbit({Rational(1, 2), Rational(1)}, Variant::Akiyama, 1000);
  auto cert = mmm::repeated_point_certificate(rec);
  REQUIRE(cert.has_value());
  CHECK(cert->i == 3);
  CHECK(cert->j == 4);
  CHECK(rec.points[cert->i - 1] == rec.points[cert->j - 1]);
  CHECK(rec.median_at(cert->s) >= rec.points[cert->i - 1]);
  CHECK(cert->s == 2);  // M_2 = 3/4 already sits above the repeated 0

  // Prefix (2/21, 1, 0) has three distinct points.
  OrbitRecord prefix = iterate_orbit({Rational(2, 21), Rational(1)}, Variant::Akiyama, 3);
  CHECK(!mmm::repeated_point_certificate(prefix).has_value());

  OrbitRecord twin = iterate_orbit({Rational(4, 9), Rational(4, 9)}, Variant::Akiyama, 1000);
  auto tcert = mmm::repeated_point_certificate(twin);
  REQUIRE(tcert.has_value());
  CHECK(tcert->i == 1);
  CHECK(tcert->j == 2);
}

TEST_CASE("affine image") {
  MultisetState s(rat_vec({Rational(0), Rational(1, 3), Rational(1)}));
  CHECK(s.affine_image(Rational(3), Rational(0)).elements() ==
        rat_vec({Rational(0), Rational(1), Rational(3)}));

  MultisetState t(rat_vec({Rational(1, 3), Rational(1)}));
  CHECK(t.affine_image(Rational(1), Rational(-1)).elements() ==
        rat_vec({Rational(-2, 3), Rational(0)}));

  MultisetState u(rat_vec({Rational(0), Rational(1, 11), Rational(1)}));
  MultisetState v = u.affine_image(Rational(-1), Rational(0));
  CHECK(v.elements() == rat_vec({Rational(-1), Rational(-1, 11), Rational(0)}));
  CHECK(v.sum() == oracle::sum(v.elements()));
}

TEST_CASE("orbit points as affine combinations of the last two medians") {
  // x_{n+2} = (n+1) M_{n+1} - n M_n along any Akiyama record.
  OrbitRecord rec = iterate_orbit({Rational(2, 21), Rational(1)}, Variant::Akiyama, 100000);
  const std::size_t n0 = rec.initial_size;
  for (std::size_t n = n0; n + 2 <= rec.points.size(); ++n) {
    const Rational lhs = rec.points[n + 1];
    const Rational rhs = Rational(static_cast<long long>(n + 1)) * rec.median_at(n + 1) -
                         Rational(static_cast<long long>(n)) * rec.median_at(n);
    CHECK(lhs == rhs);
  }
}

TEST_CASE("random orbits: monotone medians, equivariance, stabilization, exponent") {
  oracle::Rng rng(123457);
  int resolved = 0;
  for (int iter = 0; iter < 200; ++iter) {
    const std::vector<Rational> initial = rng.initial_set(1, 6);
    const Variant variant = iter % 2 ? Variant::Akiyama : Variant::Original;
    OrbitRecord rec = iterate_orbit(initial, variant, 2000);

    CHECK(rec.direction != MedianDirection::Violated);

    // Caches agree with full recomputation, spot-checked along the orbit.
    MultisetState st(initial);
    CHECK(st.sum() == oracle::sum(st.elements()));
    CHECK(st.median() == oracle::median(st.elements()));

    if (variant == Variant::Akiyama) {
      // Scalar equivariance and translation invariance of the appended point.
      const Rational a = rng.rational(20, 20);
      const Rational b = rng.rational(20, 20);
      const Rational base = st.next_point(Variant::Akiyama);
      if (!a.is_zero())
        CHECK(st.affine_image(a, Rational(0)).next_point(Variant::Akiyama) == a * base);
      CHECK(st.affine_image(Rational(1), b).next_point(Variant::Akiyama) == base);

      // Constant effective exponent along the whole record.
      const unsigned e0 = mmm::effective_exponent(
          std::span<const Rational>(rec.points.data(), rec.initial_size));
      for (std::size_t n = rec.initial_size; n <= rec.points.size(); ++n)
        CHECK(mmm::effective_exponent(std::span<const Rational>(rec.points.data(), n)) == e0);
    }

    if (rec.resolved()) {
      ++resolved;
      // Prop 2.3(i) back to back with the independent replay: ten further
      // steps all sit on the limit.
      const std::size_t detect = rec.points.size();
      const std::vector<Rational> replay =
          oracle::orbit_points(initial, variant, detect + 10);
      for (std::size_t k = detect; k < replay.size(); ++k)
        CHECK(replay[k] == rec.stabilized->limit);
      for (std::size_t k = static_cast<std::size_t>(rec.stabilized->tau) - 1;
           k < rec.points.size(); ++k)
        CHECK(rec.points[k] == rec.stabilized->limit);
      if (rec.stabilized->tau >= 2 &&
          static_cast<std::size_t>(rec.stabilized->tau) - 2 < rec.points.size())
        CHECK(rec.points[rec.stabilized->tau - 2] != rec.stabilized->limit);
    }
  }
  CHECK(resolved > 100);  // the vast majority of desk-scale orbits resolve
}

TEST_CASE("full orbits of scaled sets are scaled orbits") {
  // The map commutes with scalings but not with translations: only the next
  // appended point is translation-invariant, and that is covered above.
  oracle::Rng rng(5150);
  for (int iter = 0; iter < 50; ++iter) {
    std::vector<Rational> initial = rng.initial_set(2, 5, 30, 30);
    Rational a = rng.rational(10, 10);
    if (a.is_zero()) a = Rational(3);
    std::vector<Rational> scaled = initial;
    for (Rational& e : scaled) e *= a;
    OrbitRecord r1 = iterate_orbit(initial, Variant::Akiyama, 300);
    OrbitRecord r2 = iterate_orbit(scaled, Variant::Akiyama, 300);
    const std::size_t upto = std::min(r1.points.size(), r2.points.size());
    for (std::size_t k = 0; k < upto; ++k) CHECK(a * r1.points[k] == r2.points[k]);
  }
}

TEST_CASE("trace serialization format") {
  OrbitRecord rec = iterate_orbit({Rational(1, 2), Rational(1)}, Variant::Akiyama, 100);
  std::ostringstream os;
  mmm::write_trace(os, rec);
  CHECK(os.str() ==
        "# variant=akiyama initial=1/2,1/1 cap=100\n"
        "1\t1/2\t-\n"
        "2\t1/1\t3/4\n"
        "3\t0/1\t1/2\n"
        "4\t0/1\t1/4\n"
        "5\t-1/2\t0/1\n"
        "6\t-1/1\t0/1\n");
}
