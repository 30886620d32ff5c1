#include "aispart/instances.hpp"

#include <algorithm>
#include <fstream>
#include <functional>
#include <istream>
#include <ostream>
#include <sstream>
#include <string>

#include "aispart/errors.hpp"

namespace aispart {

void GStarParams::validate() const {
  if (n < 2 || n % 2 != 0) throw ValidationError("gstar requires an even number of jobs n >= 2, got n=" + std::to_string(n));
  if (s < 2 || s % 2 != 0) throw ValidationError("gstar requires an even number of large jobs s >= 2, got s=" + std::to_string(s));
  if (s >= n) throw ValidationError("gstar requires s < n (at least one small job), got s=" + std::to_string(s));
  if (eps <= Rational(0, 1) || eps >= Rational(1, 2 * s - 1)) {
    throw ValidationError("gstar requires 0 < eps < 1/(2s-1) = 1/" + std::to_string(2 * s - 1) + ", got eps=" +
                          eps.to_string());
  }
  if (scale < 1) throw ValidationError("scale must be a positive integer");
}

Instance gen_g_star(const GStarParams& params) {
  params.validate();
  const Rational one(1, 1);
  const Rational s(params.s, 1);
  const Rational base = one / Rational(2 * params.s - 1, 1);
  const Rational large = base - params.eps / (Rational(2, 1) * s);
  const Rational small = Rational(params.s - 1, params.n - params.s) *
                         (base + params.eps / Rational(2 * (params.s - 1), 1));

  const Weight g = gcd(large.den(), small.den());
  const Weight denominator = checked_mul(large.den() / g, small.den(), "gstar common denominator");
  const Weight unit = checked_mul(denominator, params.scale, "gstar scale");
  const Weight p_large = checked_mul(large.num(), unit / large.den(), "gstar large job");
  const Weight p_small = checked_mul(small.num(), unit / small.den(), "gstar small job");

  std::vector<Weight> times;
  times.reserve(static_cast<std::size_t>(params.n));
  times.insert(times.end(), static_cast<std::size_t>(params.s), p_large);
  times.insert(times.end(), static_cast<std::size_t>(params.n - params.s), p_small);

  InstanceMeta meta;
  meta.family = "gstar";
  meta.s = params.s;
  meta.eps = params.eps;
  meta.scale = params.scale;
  Instance inst(std::move(times), std::move(meta));
  if (inst.total() != unit) {
    throw ContractViolation("gstar normalisation broken: total " + to_string(inst.total()) + " != " + to_string(unit));
  }
  return inst;
}

Instance gen_p_star(std::int64_t n, const Rational& eps, Weight scale) {
  if (n < 4) throw ValidationError("pstar requires an even number of jobs n >= 4, got n=" + std::to_string(n));
  if (eps <= Rational(0, 1) || eps >= Rational(1, 3)) {
    throw ValidationError("pstar requires 0 < eps < 1/3, got eps=" + eps.to_string());
  }
  return gen_g_star(GStarParams{n, 2, eps, scale});
}

Instance gen_uniform(std::int64_t n, std::int64_t max_p, std::uint64_t seed) {
  if (n < 2) throw ValidationError("uniform requires n >= 2, got n=" + std::to_string(n));
  if (max_p < 1) throw ValidationError("uniform requires max_p >= 1, got max_p=" + std::to_string(max_p));
  Rng rng = make_rng(seed);
  std::uniform_int_distribution<std::int64_t> dist(1, max_p);
  std::vector<Weight> times(static_cast<std::size_t>(n));
  for (auto& t : times) t = dist(rng);
  std::sort(times.begin(), times.end(), std::greater<>());
  InstanceMeta meta;
  meta.family = "uniform";
  return Instance(std::move(times), std::move(meta));
}

void write_instance(const Instance& inst, std::ostream& out) {
  const auto& meta = inst.meta();
  out << "partition v1\n";
  out << "n=" << inst.n() << '\n';
  out << "meta=" << meta.family << ";s=" << meta.s << ";eps=" << meta.eps.to_string() << ";scale=" << to_string(meta.scale)
      << '\n';
  for (Weight p : inst.times()) out << to_string(p) << '\n';
}

void write_instance(const Instance& inst, const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot open '" + path.string() + "' for writing");
  write_instance(inst, out);
  out.flush();
  if (!out) throw IoError("failed writing '" + path.string() + "'");
}

namespace {

Weight parse_field_weight(std::string_view text, std::size_t line, const char* what) {
  const auto value = parse_weight(text);
  if (!value) throw ParseError(line, std::string("malformed ") + what + " '" + std::string(text) + "'");
  return *value;
}

InstanceMeta parse_meta(std::string_view body, std::size_t line) {
  // body: <family>;s=<int>;eps=<q>/<r>;scale=<int>
  std::vector<std::string_view> parts;
  while (true) {
    const auto semi = body.find(';');
    parts.push_back(body.substr(0, semi));
    if (semi == std::string_view::npos) break;
    body.remove_prefix(semi + 1);
  }
  if (parts.size() != 4 || parts[0].empty()) throw ParseError(line, "meta must be <family>;s=..;eps=q/r;scale=..");
  const auto value_of = [&](std::string_view part, std::string_view key) {
    if (part.substr(0, key.size()) != key) throw ParseError(line, "expected meta field '" + std::string(key) + "'");
    return part.substr(key.size());
  };
  InstanceMeta meta;
  meta.family = std::string(parts[0]);
  meta.s = static_cast<std::int64_t>(parse_field_weight(value_of(parts[1], "s="), line, "meta s"));
  try {
    meta.eps = Rational::parse(value_of(parts[2], "eps="));
  } catch (const ValidationError& e) {
    throw ParseError(line, e.what());
  }
  meta.scale = parse_field_weight(value_of(parts[3], "scale="), line, "meta scale");
  return meta;
}

}  // namespace

Instance read_instance(std::istream& in) {
  std::string text;
  std::size_t line_no = 0;
  const auto next_line = [&]() -> bool {
    if (!std::getline(in, text)) return false;
    ++line_no;
    if (!text.empty() && text.back() == '\r') text.pop_back();
    return true;
  };

  if (!next_line()) throw ParseError(1, "empty file");
  if (text != "partition v1") throw ParseError(line_no, "expected header 'partition v1'");
  if (!next_line() || text.rfind("n=", 0) != 0) throw ParseError(line_no, "expected 'n=<int>'");
  const Weight n = parse_field_weight(std::string_view(text).substr(2), line_no, "job count");
  if (n < 1 || n > (Weight{1} << 40)) throw ParseError(line_no, "job count must be positive");

  InstanceMeta meta;
  std::vector<Weight> times;
  times.reserve(static_cast<std::size_t>(n));
  bool first_body_line = true;
  while (next_line()) {
    if (first_body_line && text.rfind("meta=", 0) == 0) {
      meta = parse_meta(std::string_view(text).substr(5), line_no);
      first_body_line = false;
      continue;
    }
    first_body_line = false;
    if (text.empty()) throw ParseError(line_no, "empty line");
    const Weight p = parse_field_weight(text, line_no, "processing time");
    if (p < 1) throw ParseError(line_no, "processing time must be a positive integer, got " + text);
    if (static_cast<Weight>(times.size()) == n) throw ParseError(line_no, "more processing times than n=" + to_string(n));
    times.push_back(p);
  }
  if (static_cast<Weight>(times.size()) != n) {
    throw ParseError(line_no + 1, "expected " + to_string(n) + " processing times, found " + std::to_string(times.size()));
  }
  try {
    return Instance(std::move(times), std::move(meta));
  } catch (const ValidationError& e) {
    throw ParseError(line_no, e.what());
  }
}

Instance read_instance(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open '" + path.string() + "' for reading");
  return read_instance(in);
}

}  // namespace aispart
