#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>

#include "doctest.h"
#include "raop/instance_gen.hpp"
#include "raop/instance_io.hpp"
#include "raop/rcs.hpp"
#include "raop/taop.hpp"

using namespace raop;

namespace {

// Dip statistic restricted to a point mode: on a grid of the empirical CDF,
// the distance to the closest CDF that is convex left of the mode and
// concave right of it, minimized over mode candidates.
double dip_estimate(std::vector<double> sample) {
  std::sort(sample.begin(), sample.end());
  const std::size_t grid = 1000;
  std::vector<double> xs(grid), fs(grid);
  for (std::size_t k = 0; k < grid; ++k) {
    const std::size_t idx = k * (sample.size() - 1) / (grid - 1);
    xs[k] = sample[idx];
    fs[k] = static_cast<double>(idx + 1) / static_cast<double>(sample.size());
  }
  // largest gap between the points and their lower convex hull (upper when
  // `concave`)
  auto hull_gap = [&](std::size_t lo, std::size_t hi, bool concave) {
    std::vector<std::size_t> h;
    const double sign = concave ? -1.0 : 1.0;
    for (std::size_t k = lo; k <= hi; ++k) {
      while (h.size() >= 2) {
        const auto a = h[h.size() - 2], b = h.back();
        const double cross = (xs[b] - xs[a]) * (fs[k] - fs[a]) - (fs[b] - fs[a]) * (xs[k] - xs[a]);
        if (sign * cross <= 0.0) h.pop_back();
        else break;
      }
      h.push_back(k);
    }
    double gap = 0.0;
    std::size_t seg = 0;
    for (std::size_t k = lo; k <= hi; ++k) {
      while (seg + 1 < h.size() && xs[h[seg + 1]] < xs[k]) ++seg;
      if (seg + 1 >= h.size()) continue;
      const auto a = h[seg], b = h[seg + 1];
      const double w = xs[b] > xs[a] ? (xs[k] - xs[a]) / (xs[b] - xs[a]) : 0.0;
      gap = std::max(gap, std::abs(fs[k] - (fs[a] + w * (fs[b] - fs[a]))));
    }
    return gap;
  };
  double best = 1.0;
  for (std::size_t mode = 1; mode + 1 < grid; mode += 5) {
    best = std::min(best, std::max(hull_gap(0, mode, false), hull_gap(mode, grid - 1, true)) / 2.0);
  }
  return best;
}

std::vector<double> draw(PriceDist d, std::size_t count, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::vector<double> out(count);
  for (auto& x : out) x = sample_price(d, rng);
  return out;
}

}  // namespace

TEST_CASE("same seed, same instance") {
  for (auto dist : all_price_dists()) {
    for (auto align : all_alignments()) {
      GeneratorConfig g;
      g.n = 8;
      g.m = 3;
      g.price_dist = dist;
      g.alignment = align;
      g.seed = 42;
      CHECK(instance_to_json(gen_lcmnl(g)).dump() == instance_to_json(gen_lcmnl(g)).dump());
      GeneratorConfig h = g;
      h.seed = 43;
      CHECK(instance_to_json(gen_lcmnl(g)).dump() != instance_to_json(gen_lcmnl(h)).dump());
    }
  }
}

TEST_CASE("price spread hits alpha exactly") {
  for (std::uint64_t seed = 1; seed <= 200; ++seed) {
    GeneratorConfig g;
    g.n = 2 + seed % 20;
    g.alpha_target = 0.01 + 0.9 * static_cast<double>(seed % 10) / 10.0;
    g.price_dist = all_price_dists()[seed % 5];
    g.alignment = all_alignments()[seed % 3];
    g.seed = seed;
    const auto inst = gen_lcmnl(g);
    const auto [lo, hi] = std::minmax_element(inst.r().begin(), inst.r().end());
    CHECK(*lo == 1.0);
    CHECK(*hi == 1.0 / g.alpha_target);
    CHECK(std::abs(*lo / *hi - g.alpha_target) <= 1e-12);
  }
  const auto r = rescale_prices({3.0, 5.0, 4.0}, 0.5);
  CHECK(r == std::vector<double>{1.0, 2.0, 1.5});
}

TEST_CASE("attractions are powers of epsilon over a permutation") {
  GeneratorConfig g;
  g.n = 5;
  g.m = 4;
  g.epsilon = 0.01;
  g.seed = 9;
  const auto inst = gen_lcmnl(g);
  for (const auto& seg : inst.linear_lcmnl()->segments) {
    std::vector<double> all = seg.v;
    all.push_back(seg.v0);
    std::vector<double> exps;
    for (double v : all) exps.push_back(std::log(v) / std::log(0.01));
    std::sort(exps.begin(), exps.end());
    for (std::size_t p = 0; p < exps.size(); ++p) CHECK(exps[p] == doctest::Approx(p).epsilon(1e-12));
  }
  double sum = 0.0;
  for (double t : inst.linear_lcmnl()->theta) sum += t;
  CHECK(sum == 1.0);

  g.epsilon = 1.0;
  const auto flat = gen_lcmnl(g);
  for (const auto& seg : flat.linear_lcmnl()->segments) {
    CHECK(seg.v0 == 1.0);
    for (double v : seg.v) CHECK(v == 1.0);
  }
}

TEST_CASE("alignment orders prices by total attraction") {
  for (std::uint64_t seed = 1; seed <= 50; ++seed) {
    GeneratorConfig g;
    g.n = 6;
    g.m = 3;
    g.epsilon = 0.5;
    g.seed = seed;
    for (auto align : {Alignment::Aligned, Alignment::Anti}) {
      g.alignment = align;
      const auto inst = gen_lcmnl(g);
      const auto* model = inst.linear_lcmnl();
      std::vector<double> total(g.n, 0.0);
      for (std::size_t j = 0; j < g.m; ++j)
        for (std::size_t i = 0; i < g.n; ++i) total[i] += model->theta[j] * model->segments[j].v[i];
      for (std::size_t a = 0; a < g.n; ++a) {
        for (std::size_t b = 0; b < g.n; ++b) {
          if (total[a] > total[b]) {
            if (align == Alignment::Aligned) CHECK(inst.r()[a] >= inst.r()[b]);
            else CHECK(inst.r()[a] <= inst.r()[b]);
          }
        }
      }
    }
  }
}

TEST_CASE("multimodal prices are bimodal, normal prices are not") {
  const double bimodal = dip_estimate(draw(PriceDist::Multimodal, 100000, 1));
  const double normal = dip_estimate(draw(PriceDist::Normal, 100000, 2));
  CHECK(bimodal > 0.02);
  CHECK(normal < 0.005);
}

TEST_CASE("skew-normal prices are right-skewed") {
  const auto s = draw(PriceDist::SkewNormal, 100000, 3);
  const double mean = std::accumulate(s.begin(), s.end(), 0.0) / static_cast<double>(s.size());
  double m2 = 0.0, m3 = 0.0;
  for (double x : s) {
    m2 += (x - mean) * (x - mean);
    m3 += (x - mean) * (x - mean) * (x - mean);
  }
  m2 /= static_cast<double>(s.size());
  m3 /= static_cast<double>(s.size());
  const double skew = m3 / std::pow(m2, 1.5);
  CHECK(skew > 0.5);
  // half-normal limit for a large shape
  CHECK(mean == doctest::Approx(std::sqrt(2.0 / M_PI)).epsilon(0.02));
}

TEST_CASE("config validation and names") {
  GeneratorConfig g;
  g.epsilon = 0.0;
  CHECK_THROWS_AS(g.validate(), InvalidInstance);
  g = {};
  g.alpha_target = 1.0;
  CHECK_THROWS_AS(g.validate(), InvalidInstance);
  g = {};
  g.n = 0;
  CHECK_THROWS_AS(gen_lcmnl(g), InvalidInstance);
  for (auto d : all_price_dists()) CHECK(price_dist_from_string(to_string(d)) == d);
  for (auto a : all_alignments()) CHECK(alignment_from_string(to_string(a)) == a);
  CHECK_THROWS(price_dist_from_string("cauchy"));
  GeneratorConfig h;
  h.n = 11;
  h.price_dist = PriceDist::SkewNormal;
  h.alignment = Alignment::Anti;
  h.seed = 77;
  const auto back = generator_config_from_json(generator_config_to_json(h));
  CHECK(back.n == 11);
  CHECK(back.price_dist == PriceDist::SkewNormal);
  CHECK(back.alignment == Alignment::Anti);
  CHECK(back.seed == 77);
}

TEST_CASE("tight construction") {
  const auto c = prop1_instance({});
  const auto& model = std::get<LogLCMNLModel>(c.instance.model());
  CHECK(std::accumulate(model.theta.begin(), model.theta.end(), 0.0) == doctest::Approx(1.0).epsilon(1e-15));
  for (double lx : c.refined_log_x) CHECK(lx <= 0.0);
  const auto eval = evaluate_tight_construction(c);
  CHECK(eval.binary_optimum == doctest::Approx(1.7957303593348457).epsilon(1e-10));
  CHECK(eval.refined_revenue > eval.binary_optimum);

  TightConstructionParams one;
  one.k = 1;
  CHECK(evaluate_tight_construction(prop1_instance(one)).ratio() == doctest::Approx(1.0).epsilon(1e-9));

  TightConstructionParams limit;
  limit.gamma = std::exp(-100.0);
  limit.eps1 = 0.05;
  CHECK(evaluate_tight_construction(prop1_instance(limit)).ratio() >= 2.5);

  TightConstructionParams tiny;
  tiny.gamma = 1e-320;
  CHECK_THROWS_AS(prop1_instance(tiny), InvalidInstance);
  TightConstructionParams wide;
  wide.k = 4;
  CHECK_THROWS_AS(prop1_instance(wide), InvalidInstance);
}

TEST_CASE("two-product consideration-set pair") {
  const auto pair = prop2_instance(1e-6);
  CHECK(rcs_optimal_assortment(pair.original, pair.r).revenue == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(rcs_revenue(pair.reversed, pair.r, std::vector<double>{1.0, 1.0}) ==
        doctest::Approx(2.0 - 1e-6).epsilon(1e-12));
}

TEST_CASE("worked examples") {
  const auto ex = example_instances();
  CHECK(enumerate_taop(ex.example2).revenue == doctest::Approx(66.24).epsilon(0.05 / 66.24));
  CHECK(ex.example1.revenue(std::vector<double>{1.0, 0.0}) == doctest::Approx(1.05).epsilon(1e-12));
  CHECK(ex.example1.revenue(std::vector<double>{1.0, 0.8}) == doctest::Approx(1.75).epsilon(1e-12));
  const auto p = ex.example1.probabilities(std::vector<double>{1.0, 1.0});
  CHECK(p.total() == doctest::Approx(1.0).epsilon(1e-15));
}
