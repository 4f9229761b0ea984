#include "solgas/enumeration.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdlib>
#include <string>
#include <thread>

namespace solgas {

LogFactor LogFactor::of(Complex v) {
  if (v == Complex(0.0, 0.0)) return {0.0, 0.0, true};
  const bool negative = v.real() < 0.0;
  return {std::log(std::abs(v)), std::arg(negative ? -v : v), false, negative};
}

Complex LogFactor::value() const {
  if (zero) return 0.0;
  return std::polar(negative ? -std::exp(log_abs) : std::exp(log_abs), arg);
}

LogFactor& LogFactor::operator*=(const LogFactor& other) {
  log_abs += other.log_abs;
  arg += other.arg;
  zero = zero || other.zero;
  negative = negative != other.negative;
  return *this;
}

IsingModel::IsingModel(std::size_t n) : n_(n), couplings_(n * n), fields_(n) {}

void IsingModel::set_coupling(std::size_t i, std::size_t j, const LogFactor& f) {
  couplings_[i * n_ + j] = f;
  couplings_[j * n_ + i] = f;
}

bool IsingModel::is_real() const {
  auto real = [](const LogFactor& f) { return f.zero || f.arg == 0.0; };
  return std::all_of(couplings_.begin(), couplings_.end(), real) &&
         std::all_of(fields_.begin(), fields_.end(), real);
}

unsigned default_worker_count() {
  if (const char* env = std::getenv("SOLGAS_WORKERS")) {
    try {
      const int v = std::stoi(env);
      if (v > 0) return static_cast<unsigned>(v);
    } catch (const std::exception&) {
    }
  }
  return std::max(1u, std::thread::hardware_concurrency());
}

Complex Term::phase() const {
  const double sign = negative ? -1.0 : 1.0;
  return arg == 0.0 ? Complex(sign, 0.0) : std::polar(sign, arg);
}

namespace {

struct TotalSink {
  ScaledSum sum;
  void visit(const Term& t) { sum.add(t.log_abs, t.phase()); }
  void merge(const TotalSink& o) { sum.merge(o.sum); }
};

struct CountSink {
  std::vector<ScaledSum> sums;
  void visit(const Term& t) { sums[t.count].add(t.log_abs, t.phase()); }
  void merge(const CountSink& o) {
    for (std::size_t i = 0; i < sums.size(); ++i) sums[i].merge(o.sums[i]);
  }
};

}  // namespace

TauValue sum_all(const IsingModel& model, const EnumerationOptions& options) {
  return enumerate(model, TotalSink{}, options).sum.result();
}

std::vector<TauValue> sum_by_count(const IsingModel& model, const EnumerationOptions& options) {
  CountSink proto{std::vector<ScaledSum>(model.size() + 1)};
  const CountSink out = enumerate(model, proto, options);
  std::vector<TauValue> values;
  values.reserve(out.sums.size());
  for (const auto& s : out.sums) values.push_back(s.result());
  return values;
}

TauValue sum_fixed_count(const IsingModel& model, std::size_t n,
                         const EnumerationOptions& options) {
  return enumerate_fixed_count(model, n, TotalSink{}, options).sum.result();
}

namespace detail {

Configuration::Configuration(const IsingModel& model)
    : model_(&model), occupation_(model.size(), 0) {}

void Configuration::assign(std::uint64_t bits) {
  for (std::size_t i = 0; i < occupation_.size(); ++i) occupation_[i] = (bits >> i) & 1u;
  recompute();
}

void Configuration::recompute() {
  const std::size_t n = occupation_.size();
  log_abs_ = 0.0;
  arg_ = 0.0;
  negative_ = false;
  zeros_ = 0;
  count_ = 0;
  for (std::size_t i = 0; i < n; ++i) {
    if (!occupation_[i]) continue;
    ++count_;
    const LogFactor& h = model_->field(i);
    log_abs_ += h.log_abs;
    arg_ += h.arg;
    negative_ ^= h.negative;
    zeros_ += h.zero;
    for (std::size_t j = i + 1; j < n; ++j) {
      if (!occupation_[j]) continue;
      const LogFactor& k = model_->coupling(i, j);
      log_abs_ += k.log_abs;
      arg_ += k.arg;
      negative_ ^= k.negative;
      zeros_ += k.zero;
    }
  }
}

void Configuration::flip(std::size_t k) {
  const std::size_t n = occupation_.size();
  const LogFactor& h = model_->field(k);
  double d_log = h.log_abs;
  double d_arg = h.arg;
  bool d_negative = h.negative;
  int d_zero = h.zero;
  for (std::size_t j = 0; j < n; ++j) {
    if (j == k || !occupation_[j]) continue;
    const LogFactor& c = model_->coupling(k, j);
    d_log += c.log_abs;
    d_arg += c.arg;
    d_negative ^= c.negative;
    d_zero += c.zero;
  }
  if (occupation_[k]) {
    log_abs_ -= d_log;
    arg_ -= d_arg;
    zeros_ -= d_zero;
    --count_;
  } else {
    log_abs_ += d_log;
    arg_ += d_arg;
    zeros_ += d_zero;
    ++count_;
  }
  negative_ ^= d_negative;
  occupation_[k] ^= 1u;
}

void Configuration::restore(std::size_t k, const Snapshot& s) {
  occupation_[k] ^= 1u;
  log_abs_ = s.log_abs;
  arg_ = s.arg;
  negative_ = s.negative;
  zeros_ = s.zeros;
  count_ = s.count;
}

void check_size(const IsingModel& model, const EnumerationOptions& options) {
  const std::size_t cap = std::min<std::size_t>(options.max_sites, 62);
  if (model.size() > cap) {
    throw SizeError("N = " + std::to_string(model.size()) + " exceeds enumeration bound " +
                    std::to_string(cap));
  }
}

std::size_t split_bits(std::size_t n, const EnumerationOptions& options) {
  if (options.deterministic || n < 16) return 0;
  return std::min<std::size_t>(n - 14, 8);
}

void run_blocks(std::size_t blocks, const EnumerationOptions& options,
                const std::function<void(std::size_t)>& body) {
  const unsigned requested = options.workers ? options.workers : default_worker_count();
  const std::size_t workers = std::min<std::size_t>(requested, blocks);
  if (workers <= 1) {
    for (std::size_t b = 0; b < blocks; ++b) body(b);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::vector<std::jthread> pool;
  pool.reserve(workers);
  for (std::size_t w = 0; w < workers; ++w) {
    pool.emplace_back([&] {
      for (std::size_t b = next++; b < blocks; b = next++) body(b);
    });
  }
}

}  // namespace detail

}  // namespace solgas
