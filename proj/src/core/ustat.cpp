#include "uvartest/core/ustat.hpp"

#include <algorithm>
#include <stdexcept>

namespace uvt {
namespace {

struct Centered {
  double mean;
  double css;
};

// Two-pass mean and centered sum of squares; exact zero for constant input.
Centered centered(std::span<const double> xs) {
  const double first = xs.front();
  if (std::all_of(xs.begin(), xs.end(), [&](double x) { return x == first; })) {
    return {first, 0.0};
  }
  double sum = 0.0;
  for (double x : xs) sum += x;
  const double mean = sum / static_cast<double>(xs.size());
  double css = 0.0;
  for (double x : xs) {
    const double d = x - mean;
    css += d * d;
  }
  return {mean, css};
}

}  // namespace

GroupMoments group_moments(const Dataset& data) {
  return group_moments(data.design(), data.values());
}

GroupMoments group_moments(const Design& d, std::span<const double> values) {
  if (values.size() != d.n()) {
    throw std::invalid_argument("value count does not match design");
  }
  GroupMoments m;
  m.mean.resize(d.k());
  m.css.resize(d.k());
  for (std::size_t i = 0; i < d.k(); ++i) {
    const auto c = centered(values.subspan(d.offset(i), d.size(i)));
    m.mean[i] = c.mean;
    m.css[i] = c.css;
  }
  const auto all = centered(values);
  m.grand_mean = all.mean;
  m.total_css = all.css;
  return m;
}

double within_u(const Dataset& data, std::size_t i) {
  const auto g = data.group(i);
  return centered(g).css / static_cast<double>(g.size() - 1);
}

double between_pair_u(const Dataset& data, std::size_t i, std::size_t i2) {
  if (i == i2) {
    throw std::invalid_argument("between_pair_u needs two distinct groups");
  }
  const auto a = centered(data.group(i));
  const auto b = centered(data.group(i2));
  const double na = static_cast<double>(data.design().size(i));
  const double nb = static_cast<double>(data.design().size(i2));
  const double dm = a.mean - b.mean;
  return 0.5 * (a.css / na + b.css / nb + dm * dm);
}

Decomposition decompose(const Dataset& data) {
  return decompose(data.design(), group_moments(data));
}

// Summing 2U_{ii'} - U_i - U_{i'} over pairs with weights n_i n_{i'} collapses
// to n * SQ(b) - sum_i (n - n_i) U_i, so B_n needs only O(k) work.
Decomposition decompose(const Design& design, const GroupMoments& m) {
  const std::size_t k = design.k();
  const double n = static_cast<double>(design.n());
  Decomposition out;
  out.u_within.resize(k);
  double w = 0.0;
  double ss_between = 0.0;
  double cross = 0.0;
  for (std::size_t i = 0; i < k; ++i) {
    const double ni = static_cast<double>(design.size(i));
    const double ui = m.css[i] / (ni - 1.0);
    out.u_within[i] = ui;
    w += ni * ui;
    const double dm = m.mean[i] - m.grand_mean;
    ss_between += ni * dm * dm;
    cross += (n - ni) * ui;
  }
  out.w_n = w / n;
  out.b_n = (n * ss_between - cross) / (n * (n - 1.0));
  out.u_pooled = m.total_css / (n - 1.0);
  return out;
}

EtaWeights::EtaWeights(Design design) : design_(std::move(design)) {
  const double n = static_cast<double>(design_.n());
  std::size_t same_pairs = 0;
  within_.reserve(design_.k());
  for (std::size_t ni : design_.sizes()) {
    const double w = (n - static_cast<double>(ni)) / static_cast<double>(ni - 1);
    within_.push_back(w);
    const std::size_t pairs = ni * (ni - 1) / 2;
    same_pairs += pairs;
    m_n_ += static_cast<double>(pairs) * w * w;
  }
  const std::size_t all_pairs = design_.n() * (design_.n() - 1) / 2;
  m_n_ += static_cast<double>(all_pairs - same_pairs);
}

double EtaWeights::operator()(std::size_t r, std::size_t s) const {
  if (r == s) throw std::invalid_argument("eta is defined only for r != s");
  const std::size_t gr = design_.group_of(r);
  return gr == design_.group_of(s) ? within_[gr] : -1.0;
}

double m_n(const Design& design) {
  const double n = static_cast<double>(design.n());
  const double k = static_cast<double>(design.k());
  double acc = 0.0;
  for (std::size_t ni : design.sizes()) {
    const double s = static_cast<double>(ni);
    acc += (n - s) / ((s - 1.0) * (k - 1.0));
  }
  return 0.5 * n * (n - 1.0) * (k - 1.0) * (1.0 + acc / n);
}

double b_n_centered(const Dataset& data, double center) {
  const EtaWeights eta(data.design());
  const auto y = data.values();
  const std::size_t n = y.size();
  long double acc = 0.0L;
  for (std::size_t r = 0; r + 1 < n; ++r) {
    const long double yr = static_cast<long double>(y[r]) - center;
    long double row = 0.0L;
    for (std::size_t s = r + 1; s < n; ++s) {
      row += static_cast<long double>(eta(r, s)) *
             (static_cast<long double>(y[s]) - center);
    }
    acc += yr * row;
  }
  const long double pairs = 0.5L * static_cast<long double>(n) *
                            static_cast<long double>(n - 1);
  return static_cast<double>(acc / pairs);
}

}  // namespace uvt
