#include <doctest.h>

#include <cmath>
#include <numbers>

#include "pscheb/errors.hpp"
#include "pscheb/lambert_w.hpp"

using namespace pscheb;

namespace {

struct Reference {
  int k;
  cplx x, w;
};

// Frozen from scipy.special.lambertw 1.15.
const Reference references[] = {
    {0, {0.5, 0.0}, {0.35173371124919584, 0.0}},
    {0, {1.0, 0.0}, {0.5671432904097838, 0.0}},
    {0, {10.0, 0.0}, {1.7455280027406994, 0.0}},
    {0, {1000.0, 0.0}, {5.249602852401596, 0.0}},
    {0, {-0.1, 0.0}, {-0.11183255915896297, 0.0}},
    {0, {-0.3, 0.0}, {-0.4894022271802149, 0.0}},
    {0, {-0.36, 0.0}, {-0.8060843159708174, 0.0}},
    {0, {-0.5, 0.0}, {-0.7940236323446893, 0.7701117505103791}},
    {0, {-1.0, 0.0}, {-0.3181315052047642, 1.3372357014306893}},
    {0, {-2.0, 0.0}, {0.17281600284, 1.6736864137408427}},
    {0, {1.0, 1.0}, {0.6569660692304364, 0.325450339413415}},
    {0, {-1.0, 0.5}, {0.005397510982281907, 1.1120025453478022}},
    {0, {-0.2, -0.3}, {-0.07977571712747844, -0.3822614706589034}},
    {0, {3.0, -4.0}, {1.281561806123776, -0.533095222020971}},
    {0, {-0.3678, 1e-06}, {-0.9793603034304427, 0.00012901125060738362}},
    {0, {100000.0, 100000.0}, {9.595467463866832, 0.711394912032392}},
    {0, {0.01, 0.0}, {0.009901473843595012, 0.0}},
    {-1, {0.5, 0.0}, {-2.259158898533606, -4.220960969266197}},
    {-1, {1.0, 0.0}, {-1.5339133197935746, -4.375185153061898}},
    {-1, {10.0, 0.0}, {0.7113903608251336, -4.8577983561795905}},
    {-1, {1000.0, 0.0}, {4.914922399810545, -5.4465261597944705}},
    {-1, {-0.1, 0.0}, {-3.577152063957297, 0.0}},
    {-1, {-0.3, 0.0}, {-1.7813370234216275, 0.0}},
    {-1, {-0.36, 0.0}, {-1.2227701339785066, 0.0}},
    {-1, {-0.5, 0.0}, {-0.7940236323446894, -0.7701117505103791}},
    {-1, {-1.0, 0.0}, {-0.3181315052047642, -1.3372357014306893}},
    {-1, {-2.0, 0.0}, {0.17281600284, -1.6736864137408427}},
    {-1, {1.0, 1.0}, {-0.9869695732212752, -3.663857003284792}},
    {-1, {-1.0, 0.5}, {-0.4924330520200132, -1.7619098698762115}},
    {-1, {-0.2, -0.3}, {-2.9793214007184843, -6.4377494687141175}},
    {-1, {3.0, -4.0}, {-0.11691092896595326, -5.6188803987128235}},
    {-1, {-0.3678, 1e-06}, {-1.020927650932094, -0.00013263637441230907}},
    {-1, {100000.0, 100000.0}, {9.486545252419264, -5.011755560221039}},
    {-1, {0.01, 0.0}, {-6.6286149900094005, -3.6442652387283725}},
    {1, {0.5, 0.0}, {-2.259158898533606, 4.220960969266197}},
    {1, {1.0, 0.0}, {-1.5339133197935746, 4.375185153061898}},
    {1, {10.0, 0.0}, {0.7113903608251336, 4.8577983561795905}},
    {1, {1000.0, 0.0}, {4.914922399810545, 5.4465261597944705}},
    {1, {-0.1, 0.0}, {-4.44909817870089, 7.3070607892176085}},
    {1, {-0.3, 0.0}, {-3.3002378364383755, 7.436294411632747}},
    {1, {-0.36, 0.0}, {-3.1112512656651576, 7.458800129613164}},
    {1, {-0.5, 0.0}, {-2.772069015153082, 7.4999430283418755}},
    {1, {-1.0, 0.0}, {-2.062277729598284, 7.588631178472513}},
    {1, {-2.0, 0.0}, {-1.3607494244085732, 7.678589079816594}},
    {1, {1.0, 1.0}, {-1.3428489407008042, 5.2472493742914015}},
    {1, {-1.0, 0.5}, {-1.8868040710280283, 7.1316938123013935}},
    {1, {-0.2, -0.3}, {-1.9757366158319822, 1.6905669201064182}},
    {1, {3.0, -4.0}, {0.25856740686699753, 3.8521166861614358}},
    {1, {-0.3678, 1e-06}, {-3.0890661589240573, 7.46145963170419}},
    {1, {100000.0, 100000.0}, {9.423341382916002, 6.467120031428077}},
    {1, {0.01, 0.0}, {-6.6286149900094005, 3.6442652387283725}},
    {-2, {0.5, 0.0}, {-3.1049770718920247, -10.71348331130125}},
    {-2, {1.0, 0.0}, {-2.4015851048680026, -10.77629951611507}},
    {-2, {10.0, 0.0}, {-0.09416474721414776, -10.987003940068023}},
    {-2, {1000.0, 0.0}, {4.40713570442081, -11.36548872736534}},
    {-2, {-0.1, 0.0}, {-4.44909817870089, -7.3070607892176085}},
    {-2, {-0.3, 0.0}, {-3.3002378364383755, -7.436294411632747}},
    {-2, {-0.36, 0.0}, {-3.1112512656651576, -7.458800129613164}},
    {-2, {-0.5, 0.0}, {-2.772069015153082, -7.4999430283418755}},
    {-2, {-1.0, 0.0}, {-2.062277729598284, -7.588631178472513}},
    {-2, {-2.0, 0.0}, {-1.3607494244085732, -7.678589079816594}},
    {-2, {1.0, 1.0}, {-1.976648358189588, -10.01531788605294}},
    {-2, {-1.0, 0.5}, {-2.0070550778476752, -8.073984701383011}},
    {-2, {-0.2, -0.3}, {-3.6137348008335093, -12.880853761162085}},
    {-2, {3.0, -4.0}, {-0.8655467994333399, -11.849956798331991}},
    {-2, {-0.3678, 1e-06}, {-3.089066834724942, -7.461465258653388}},
    {-2, {100000.0, 100000.0}, {9.201159414247199, -10.910773200527032}},
    {-2, {0.01, 0.0}, {-7.139631515576494, -10.393680604336689}},
};

}  // namespace

TEST_CASE("lambert_w special values") {
  CHECK(lambert_w(0, 0.0) == cplx{0, 0});
  CHECK(std::abs(lambert_w(0, std::numbers::e) - 1.0) < 1e-15);
  const cplx m = -1.0 / std::numbers::e;
  CHECK(std::abs(lambert_w(0, m) + 1.0) <= 1e-8);
  CHECK(std::abs(lambert_w(-1, m) + 1.0) <= 1e-8);
  CHECK_THROWS_AS(lambert_w(-1, 0.0), InvalidArgument);
  CHECK_THROWS_AS(lambert_w(0, cplx{std::nan(""), 0}), InvalidArgument);
}

TEST_CASE("lambert_w matches reference values") {
  for (const auto& r : references) {
    CAPTURE(r.k);
    CAPTURE(r.x);
    const cplx w = lambert_w(r.k, r.x);
    CHECK(std::abs(w - r.w) <= 1e-12 * (1 + std::abs(r.w)));
  }
}

TEST_CASE("lambert_w residual on a grid of arguments and branches") {
  for (int k = -3; k <= 3; ++k)
    for (double re = -3; re <= 3; re += 0.37)
      for (double im = -3; im <= 3; im += 0.41) {
        const cplx x{re, im};
        if (x == cplx{0, 0}) continue;
        const cplx w = lambert_w(k, x);
        CHECK(std::abs(w * std::exp(w) - x) <= 1e-12 * (1 + std::abs(x)));
      }
}

TEST_CASE("lambert_w near the branch point") {
  const double b = -1.0 / std::numbers::e;
  for (double d : {1e-14, 1e-10, 1e-6, 1e-3}) {
    const cplx w0 = lambert_w(0, b + d), wm = lambert_w(-1, b + d);
    CHECK(w0.imag() == 0.0);
    CHECK(wm.imag() == 0.0);
    CHECK(w0.real() > -1.0);
    CHECK(wm.real() < -1.0);
    CHECK(std::abs(w0 * std::exp(w0) - (b + d)) <= 1e-12);
  }
}
