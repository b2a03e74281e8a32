#include "satotate/frobenius.hpp"

#include <algorithm>
#include <atomic>
#include <charconv>
#include <cmath>
#include <istream>
#include <numbers>
#include <optional>
#include <ostream>
#include <thread>

#include "satotate/errors.hpp"

namespace satotate {

namespace {

std::int64_t mod(std::int64_t v, std::int64_t p) {
  const std::int64_t r = v % p;
  return r < 0 ? r + p : r;
}

/// Point count with a caller-owned residue table so workers can reuse it.
std::int64_t count_points_with(const CurveSpec& curve, std::int64_t p, std::vector<std::int8_t>& chi) {
  if (p < 5) throw ContractError("count_points: p must be at least 5 (got " + std::to_string(p) + ")");
  if (!has_good_reduction(curve, p)) throw BadReductionError(p);

  // Legendre symbol table: chi[r] = (r / p).
  chi.assign(static_cast<std::size_t>(p), -1);
  chi[0] = 0;
  for (std::int64_t x = 1; x <= (p - 1) / 2; ++x) chi[static_cast<std::size_t>(x * x % p)] = 1;

  // f(x) = x^3 + a x + b stepped by forward differences: d1 = f(x+1) - f(x),
  // d2 = d1(x+1) - d1(x) = 6x + 6, third difference 6.
  const std::int64_t a = mod(curve.a, p);
  std::int64_t f = mod(curve.b, p);
  std::int64_t d1 = mod(1 + a, p);
  std::int64_t d2 = 6 % p;
  const std::int64_t d3 = 6 % p;
  std::int64_t sum = 0;
  for (std::int64_t x = 0; x < p; ++x) {
    sum += chi[static_cast<std::size_t>(f)];
    f += d1;
    if (f >= p) f -= p;
    d1 += d2;
    if (d1 >= p) d1 -= p;
    d2 += d3;
    if (d2 >= p) d2 -= p;
  }
  return p + 1 + sum;
}

}  // namespace

__int128 discriminant_core(const CurveSpec& curve) {
  const __int128 a = curve.a;
  const __int128 b = curve.b;
  return 4 * a * a * a + 27 * b * b;
}

bool is_singular(const CurveSpec& curve) { return discriminant_core(curve) == 0; }

CurveSpec make_curve(std::int64_t a, std::int64_t b) {
  CurveSpec c{a, b, "y^2=x^3+" + std::to_string(a) + "x+" + std::to_string(b)};
  if (is_singular(c)) {
    throw ContractError("curve " + c.label + " is singular (4a^3 + 27b^2 = 0)");
  }
  return c;
}

std::vector<std::int64_t> prime_sieve(std::int64_t bound) {
  if (bound < 5) throw ContractError("prime_sieve: bound must be at least 5 (got " + std::to_string(bound) + ")");
  std::vector<bool> composite(static_cast<std::size_t>(bound) + 1, false);
  std::vector<std::int64_t> primes;
  for (std::int64_t i = 2; i <= bound; ++i) {
    if (composite[i]) continue;
    if (i >= 5) primes.push_back(i);
    for (std::int64_t j = i * i; j <= bound; j += i) composite[j] = true;
  }
  return primes;
}

bool is_prime(std::int64_t n) {
  if (n < 2) return false;
  if (n % 2 == 0) return n == 2;
  for (std::int64_t d = 3; d * d <= n; d += 2)
    if (n % d == 0) return false;
  return true;
}

bool has_good_reduction(const CurveSpec& curve, std::int64_t p) {
  if (p == 2 || p == 3) return false;
  return discriminant_core(curve) % p != 0;
}

std::int64_t count_points(const CurveSpec& curve, std::int64_t p) {
  std::vector<std::int8_t> chi;
  return count_points_with(curve, p, chi);
}

bool within_hasse(std::int64_t ap, std::int64_t p) {
  const __int128 a = ap;
  return a * a <= static_cast<__int128>(4) * p;
}

std::int64_t trace_of_frobenius(const CurveSpec& curve, std::int64_t p) {
  const std::int64_t ap = p + 1 - count_points(curve, p);
  if (!within_hasse(ap, p)) {
    throw IntegrityError("Hasse bound violated: a_" + std::to_string(p) + " = " + std::to_string(ap));
  }
  return ap;
}

GenerationResult generate_ap(const CurveSpec& curve, std::int64_t bound, unsigned threads) {
  if (is_singular(curve)) throw ContractError("generate_ap: singular curve");
  const std::vector<std::int64_t> primes = prime_sieve(bound);
  std::vector<std::optional<std::int64_t>> ap(primes.size());
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    std::vector<std::int8_t> chi;
    for (std::size_t i = next.fetch_add(1); i < primes.size(); i = next.fetch_add(1)) {
      const std::int64_t p = primes[i];
      if (!has_good_reduction(curve, p)) continue;
      const std::int64_t a = p + 1 - count_points_with(curve, p, chi);
      if (!within_hasse(a, p)) {
        throw IntegrityError("Hasse bound violated: a_" + std::to_string(p) + " = " + std::to_string(a));
      }
      ap[i] = a;
    }
  };
  threads = std::max(1u, threads);
  if (threads == 1) {
    worker();
  } else {
    std::vector<std::exception_ptr> errors(threads);
    std::vector<std::thread> pool;
    for (unsigned t = 0; t < threads; ++t) {
      pool.emplace_back([&, t] {
        try {
          worker();
        } catch (...) {
          errors[t] = std::current_exception();
        }
      });
    }
    for (auto& th : pool) th.join();
    for (auto& e : errors)
      if (e) std::rethrow_exception(e);
  }
  GenerationResult out;
  for (std::size_t i = 0; i < primes.size(); ++i) {
    if (ap[i]) out.rows.push_back({primes[i], *ap[i]});
    else out.skipped.push_back(primes[i]);
  }
  return out;
}

ClassPoint normalized_class(std::int64_t ap, std::int64_t p, const GroupModel& model) {
  if (!within_hasse(ap, p)) {
    throw IntegrityError("a_p = " + std::to_string(ap) + " exceeds the Hasse bound at p = " + std::to_string(p));
  }
  const double x = std::clamp(static_cast<double>(ap) / (2.0 * std::sqrt(static_cast<double>(p))), -1.0, 1.0);
  const double theta = std::acos(x);
  if (model.name == "SU2") return ClassPoint(0, {theta});
  if (model.name == "N_U1") {
    if (ap != 0) return ClassPoint(0, {theta});
    return ClassPoint(1, std::span<const double>{});
  }
  throw UnsupportedModelError("normalized_class: weight-1 samples map to SU2 or N_U1, not " + model.name);
}

ClassPoint symmetric_square_class(const ClassPoint& su2_point, const GroupModel& target) {
  if (target.name != "SO3" && target.name != "O3_CANDIDATE") {
    throw UnsupportedModelError("symmetric_square_class: target must be SO3 or O3_CANDIDATE, not " + target.name);
  }
  const double t = su2_point.rank == 1 ? su2_point[0] : -1.0;
  if (su2_point.component != 0 || !(t >= 0.0 && t <= std::numbers::pi)) {
    throw DomainError("symmetric_square_class: expected an SU2 class with angle in [0, pi]");
  }
  // Sym^2 has determinant 1, so the class lands in the identity component.
  return target.canonical(0, {t});
}

std::vector<FrobeniusSample> make_samples(std::span<const ApRecord> rows, const GroupModel& model) {
  std::vector<FrobeniusSample> out;
  out.reserve(rows.size());
  for (const auto& r : rows) {
    FrobeniusSample s;
    s.p = r.p;
    s.ap = r.ap;
    s.weight = 1;
    s.class_point = normalized_class(r.ap, r.p, model);
    s.component = s.class_point.component;
    out.push_back(s);
  }
  return out;
}

std::vector<FrobeniusSample> filter_degree_one(std::vector<FrobeniusSample> samples) {
  std::erase_if(samples, [](const FrobeniusSample& s) { return s.residue_degree != 1; });
  return samples;
}

namespace {

bool cm_from_counts(std::size_t zeros, std::size_t n, double threshold) {
  if (n < kMinCmSamples) {
    throw IndeterminateError("cm_detect needs at least " + std::to_string(kMinCmSamples) + " samples, got " +
                             std::to_string(n));
  }
  return static_cast<double>(zeros) / static_cast<double>(n) > threshold;
}

}  // namespace

bool cm_detect(std::span<const FrobeniusSample> samples, double threshold) {
  const auto zeros = std::count_if(samples.begin(), samples.end(), [](const FrobeniusSample& s) { return s.ap == 0; });
  return cm_from_counts(static_cast<std::size_t>(zeros), samples.size(), threshold);
}

bool cm_detect(std::span<const ApRecord> rows, double threshold) {
  const auto zeros = std::count_if(rows.begin(), rows.end(), [](const ApRecord& r) { return r.ap == 0; });
  return cm_from_counts(static_cast<std::size_t>(zeros), rows.size(), threshold);
}

namespace {

std::optional<std::int64_t> parse_int(std::string_view s) {
  std::int64_t v = 0;
  const auto* end = s.data() + s.size();
  const auto [ptr, ec] = std::from_chars(s.data(), end, v);
  if (ec != std::errc() || ptr != end || s.empty()) return std::nullopt;
  return v;
}

}  // namespace

std::vector<ApRecord> read_ap_csv(std::istream& in, bool negate_ap) {
  std::vector<ApRecord> rows;
  std::string line;
  std::size_t lineno = 0;
  bool header = false;
  while (std::getline(in, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty() || line.front() == '#') continue;
    if (!header) {
      if (line != "p,ap") throw CsvError(lineno, "expected header 'p,ap', got '" + line + "'");
      header = true;
      continue;
    }
    const auto comma = line.find(',');
    if (comma == std::string::npos || line.find(',', comma + 1) != std::string::npos) {
      throw CsvError(lineno, "expected two comma-separated fields");
    }
    const auto p = parse_int(std::string_view(line).substr(0, comma));
    const auto ap = parse_int(std::string_view(line).substr(comma + 1));
    if (!p || !ap) throw CsvError(lineno, "fields must be integers");
    if (!is_prime(*p)) throw CsvError(lineno, std::to_string(*p) + " is not prime");
    rows.push_back({*p, negate_ap ? -*ap : *ap});
  }
  if (!header) throw CsvError(lineno == 0 ? 1 : lineno, "missing header 'p,ap'");
  return rows;
}

void write_ap_csv(std::ostream& out, std::span<const ApRecord> rows) {
  out << "p,ap\n";
  for (const auto& r : rows) out << r.p << ',' << r.ap << '\n';
}

}  // namespace satotate
