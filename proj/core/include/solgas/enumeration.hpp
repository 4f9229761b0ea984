#pragma once

#include <bit>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <span>
#include <vector>

#include "solgas/errors.hpp"
#include "solgas/tau_value.hpp"

namespace solgas {

inline constexpr std::size_t kDefaultMaxSites = 24;

// +-exp(log_abs + i*arg), or an exact zero. Sign flips are kept apart from arg so that
// products of negative reals stay exactly real.
struct LogFactor {
  double log_abs = 0.0;
  double arg = 0.0;
  bool zero = false;
  bool negative = false;

  static LogFactor of(Complex v);
  static LogFactor exp_of(Complex exponent) { return {exponent.real(), exponent.imag(), false}; }
  static LogFactor exp_of_real(double exponent) { return {exponent, 0.0, false}; }
  Complex value() const;
  LogFactor& operator*=(const LogFactor& other);
  friend LogFactor operator*(LogFactor a, const LogFactor& b) { return a *= b; }
};

// Weights of the form sum_nu prod_{i<j} K_ij^{nu_i nu_j} prod_i h_i^{nu_i}.
// Both the soliton sum and the lattice-gas Boltzmann sum reduce to this.
class IsingModel {
 public:
  explicit IsingModel(std::size_t n = 0);

  std::size_t size() const { return n_; }
  const LogFactor& coupling(std::size_t i, std::size_t j) const { return couplings_[i * n_ + j]; }
  const LogFactor& field(std::size_t i) const { return fields_[i]; }
  void set_coupling(std::size_t i, std::size_t j, const LogFactor& f);
  void set_field(std::size_t i, const LogFactor& f) { fields_[i] = f; }
  bool is_real() const;

 private:
  std::size_t n_;
  std::vector<LogFactor> couplings_;
  std::vector<LogFactor> fields_;
};

enum class EnumerationOrder { Gray, Naive };

struct EnumerationOptions {
  std::size_t max_sites = kDefaultMaxSites;
  EnumerationOrder order = EnumerationOrder::Gray;
  bool deterministic = false;
  unsigned workers = 0;  // 0 selects default_worker_count()
};

// SOLGAS_WORKERS if set and positive, otherwise hardware concurrency.
unsigned default_worker_count();

// One nonzero term of the configuration sum.
struct Term {
  std::size_t count;
  double log_abs;
  double arg;
  bool negative;
  std::span<const std::uint8_t> occupation;

  Complex phase() const;
};

TauValue sum_all(const IsingModel& model, const EnumerationOptions& options = {});
std::vector<TauValue> sum_by_count(const IsingModel& model, const EnumerationOptions& options = {});
TauValue sum_fixed_count(const IsingModel& model, std::size_t n,
                         const EnumerationOptions& options = {});

namespace detail {

inline constexpr std::uint64_t kResyncInterval = 1024;

class Configuration {
 public:
  explicit Configuration(const IsingModel& model);
  void assign(std::uint64_t bits);
  void recompute();
  void flip(std::size_t k);
  bool nonzero() const { return zeros_ == 0; }
  Term term() const { return {count_, log_abs_, arg_, negative_, occupation_}; }

  struct Snapshot {
    double log_abs, arg;
    bool negative;
    int zeros;
    std::size_t count;
  };
  Snapshot snapshot() const { return {log_abs_, arg_, negative_, zeros_, count_}; }
  void restore(std::size_t k, const Snapshot& s);

 private:
  const IsingModel* model_;
  std::vector<std::uint8_t> occupation_;
  double log_abs_ = 0.0;
  double arg_ = 0.0;
  bool negative_ = false;
  int zeros_ = 0;
  std::size_t count_ = 0;
};

void check_size(const IsingModel& model, const EnumerationOptions& options);
std::size_t split_bits(std::size_t n, const EnumerationOptions& options);
void run_blocks(std::size_t blocks, const EnumerationOptions& options,
                const std::function<void(std::size_t)>& body);

template <class Sink>
void gray_block(const IsingModel& model, std::size_t low_bits, std::uint64_t prefix, Sink& sink) {
  Configuration c(model);
  c.assign(prefix << low_bits);
  if (c.nonzero()) sink.visit(c.term());
  const std::uint64_t total = std::uint64_t{1} << low_bits;
  for (std::uint64_t g = 1; g < total; ++g) {
    c.flip(static_cast<std::size_t>(std::countr_zero(g)));
    if (g % kResyncInterval == 0) c.recompute();
    if (c.nonzero()) sink.visit(c.term());
  }
}

template <class Sink>
void naive_sweep(const IsingModel& model, Sink& sink) {
  Configuration c(model);
  const std::uint64_t total = std::uint64_t{1} << model.size();
  for (std::uint64_t code = 0; code < total; ++code) {
    c.assign(code);
    if (c.nonzero()) sink.visit(c.term());
  }
}

template <class Sink>
void combinations(Configuration& c, std::size_t n, std::size_t start, std::size_t remaining,
                  Sink& sink) {
  if (remaining == 0) {
    if (c.nonzero()) sink.visit(c.term());
    return;
  }
  for (std::size_t i = start; i + remaining <= n; ++i) {
    const auto saved = c.snapshot();
    c.flip(i);
    combinations(c, n, i + 1, remaining - 1, sink);
    c.restore(i, saved);
  }
}

}  // namespace detail

// Visits every nonzero configuration. Sinks provide visit(const Term&) and merge(const Sink&).
// Partial sums over fixed high-bit blocks are merged in block order, so the result does not
// depend on the worker count; `deterministic` forces a single Gray sequence.
template <class Sink>
Sink enumerate(const IsingModel& model, const Sink& prototype,
               const EnumerationOptions& options = {}) {
  detail::check_size(model, options);
  if (options.order == EnumerationOrder::Naive) {
    Sink sink = prototype;
    detail::naive_sweep(model, sink);
    return sink;
  }
  const std::size_t high = detail::split_bits(model.size(), options);
  const std::size_t low = model.size() - high;
  const std::size_t blocks = std::size_t{1} << high;
  std::vector<Sink> partial(blocks, prototype);
  detail::run_blocks(blocks, options,
                     [&](std::size_t b) { detail::gray_block(model, low, b, partial[b]); });
  Sink out = std::move(partial[0]);
  for (std::size_t b = 1; b < blocks; ++b) out.merge(partial[b]);
  return out;
}

template <class Sink>
Sink enumerate_fixed_count(const IsingModel& model, std::size_t n, const Sink& prototype,
                           const EnumerationOptions& options = {}) {
  detail::check_size(model, options);
  if (n > model.size()) throw RangeError("subset size exceeds number of sites");
  Sink sink = prototype;
  detail::Configuration c(model);
  c.assign(0);
  detail::combinations(c, model.size(), 0, n, sink);
  return sink;
}

}  // namespace solgas
