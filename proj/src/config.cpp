#include "sectionlab/config.hpp"

#include <cctype>
#include <charconv>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <json.hpp>
#include <sstream>

#include "sectionlab/errors.hpp"
#include "sectionlab/math_kernel.hpp"

namespace sectionlab {

namespace {

struct CommandName {
  Command c;
  const char* name;
};

constexpr CommandName kCommands[] = {
    {Command::Constants, "constants"}, {Command::Verify, "verify"},
    {Command::Identity, "identity"},   {Command::BpCheck, "bp-check"},
    {Command::Crofton, "crofton"},     {Command::Sweep, "sweep"},
};

// Cursor over a body spec; positions in errors are offsets into the full spec.
class SpecReader {
 public:
  explicit SpecReader(const std::string& s) : s_(s) {}

  std::size_t pos() const { return pos_; }
  bool done() const { return pos_ >= s_.size(); }
  char peek() const { return done() ? '\0' : s_[pos_]; }

  [[noreturn]] void fail(const std::string& what) const { fail_at(what, pos_); }
  [[noreturn]] void fail_at(const std::string& what, std::size_t at) const {
    std::ostringstream os;
    os << "body spec '" << s_ << "': " << what;
    throw ParseError(os.str(), at);
  }

  std::string word() {
    const std::size_t start = pos_;
    while (!done() && (std::isalnum(static_cast<unsigned char>(peek())) || peek() == '_')) ++pos_;
    return s_.substr(start, pos_ - start);
  }

  void expect(char c) {
    if (peek() != c) fail(std::string("expected '") + c + "'");
    ++pos_;
  }

  double real() {
    const char* first = s_.data() + pos_;
    const char* last = s_.data() + s_.size();
    double v = 0.0;
    const auto [ptr, ec] = std::from_chars(first, last, v);
    if (ec != std::errc() || ptr == first) fail("expected a real number");
    if (!std::isfinite(v)) fail("number is not finite");
    pos_ += static_cast<std::size_t>(ptr - first);
    return v;
  }

  std::string rest() {
    std::string out = s_.substr(pos_);
    pos_ = s_.size();
    return out;
  }

  void finish() {
    if (!done()) fail("unexpected trailing input");
  }

 private:
  const std::string& s_;
  std::size_t pos_ = 0;
};

// Parses "key=" and returns the key's position.
std::size_t key(SpecReader& r, const std::string& expected) {
  const std::size_t at = r.pos();
  const std::string k = r.word();
  if (k != expected) r.fail_at("expected key '" + expected + "'", at);
  r.expect('=');
  return at;
}

std::vector<double> real_list(SpecReader& r, char sep) {
  std::vector<double> out{r.real()};
  while (r.peek() == sep) {
    r.expect(sep);
    out.push_back(r.real());
  }
  return out;
}

}  // namespace

const char* to_string(Command c) {
  for (const auto& e : kCommands) {
    if (e.c == c) return e.name;
  }
  return "unknown";
}

const char* to_string(OutputFormat f) { return f == OutputFormat::Json ? "json" : "csv"; }

std::optional<Command> parse_command(const std::string& name) {
  for (const auto& e : kCommands) {
    if (name == e.name) return e.c;
  }
  return std::nullopt;
}

std::optional<OutputFormat> parse_format(const std::string& name) {
  if (name == "json") return OutputFormat::Json;
  if (name == "csv") return OutputFormat::Csv;
  return std::nullopt;
}

RunOptions ExperimentConfig::run_options() const {
  RunOptions o;
  o.n = n;
  o.seed = seed;
  o.workers = workers;
  o.n_inner = n_inner;
  o.mc_section_points = mc_section_points;
  return o;
}

void ExperimentConfig::validate() const {
  if (d < 1 || d > kMaxDimension) {
    throw ConfigError("d must lie in [1, " + std::to_string(kMaxDimension) + "]");
  }
  if (workers < 0) throw ConfigError("workers must be >= 0");
  if (!(eq_tol >= 0.0)) throw ConfigError("eq_tol must be >= 0");
  if (command != Command::Constants && n < 2) throw ConfigError("n must be >= 2");
  switch (command) {
    case Command::Constants:
      MomentParams(d, k, p);
      break;
    case Command::Verify: {
      const auto id = parse_theorem(theorem);
      if (!id) throw ConfigError("unknown theorem '" + theorem + "'");
      MomentParams(d, k, p);
      if (probabilistic && k >= d) throw ConfigError("the probabilistic form requires k < d");
      if ((*id == TheoremId::BpLinear || *id == TheoremId::BpAffine) && n_inner < 1) {
        throw ConfigError("n_inner must be >= 1");
      }
      break;
    }
    case Command::Identity:
      if (family != "linear" && family != "affine") {
        throw ConfigError("family must be 'linear' or 'affine'");
      }
      if (d < 2) throw ConfigError("identity checks need d >= 2");
      MomentParams(d, 1, p);
      break;
    case Command::BpCheck:
      if (kind != "linear" && kind != "affine") throw ConfigError("kind must be 'linear' or 'affine'");
      MomentParams(d, k, p);
      if (k >= d) throw ConfigError("bp-check requires k < d");
      if (p < 0.0) throw ConfigError("bp-check requires p >= 0");
      if (n_inner < 1) throw ConfigError("n_inner must be >= 1");
      break;
    case Command::Crofton:
      if (k < 1 || k >= d) throw ConfigError("crofton requires 1 <= k <= d-1");
      break;
    case Command::Sweep: {
      if (!parse_theorem(theorem)) throw ConfigError("unknown theorem '" + theorem + "'");
      const std::size_t cells = bodies.size() * ks.size() * ps.size();
      if (cells > kMaxSweepCells) {
        throw ConfigError("sweep grid has " + std::to_string(cells) + " cells; the limit is " +
                          std::to_string(kMaxSweepCells));
      }
      break;
    }
  }
}

std::uint64_t parse_seed(const std::string& text) {
  std::string digits = text;
  int base = 10;
  if (digits.size() > 2 && digits[0] == '0' && (digits[1] == 'x' || digits[1] == 'X')) {
    digits = digits.substr(2);
    base = 16;
  }
  std::uint64_t v = 0;
  const char* first = digits.data();
  const char* last = first + digits.size();
  const auto [ptr, ec] = std::from_chars(first, last, v, base);
  if (digits.empty() || ec != std::errc() || ptr != last) {
    throw ConfigError("invalid seed '" + text + "': expected decimal or 0x-hex");
  }
  return v;
}

std::uint64_t default_seed(std::uint64_t fallback) {
  const char* env = std::getenv(kSeedEnvVar);
  if (env == nullptr || *env == '\0') return fallback;
  return parse_seed(env);
}

ConvexBody load_polytope_file(const std::string& path, int d) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open polytope file '" + path + "'");
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(in);
  } catch (const nlohmann::json::parse_error& e) {
    throw ParseError("polytope file '" + path + "': " + e.what(), e.byte);
  }
  if (!doc.is_object() || !doc.contains("A") || !doc.contains("b")) {
    throw InvalidBody("polytope file must be an object with keys 'A' and 'b'");
  }
  for (const auto& item : doc.items()) {
    if (item.key() != "A" && item.key() != "b") {
      throw InvalidBody("polytope file: unknown key '" + item.key() + "'");
    }
  }
  const auto& A = doc.at("A");
  const auto& b = doc.at("b");
  if (!A.is_array() || !b.is_array() || A.size() != b.size() || A.empty()) {
    throw InvalidBody("polytope file: 'A' and 'b' must be non-empty arrays of equal length");
  }
  Eigen::MatrixXd mA(A.size(), d);
  Eigen::VectorXd vb(b.size());
  for (std::size_t i = 0; i < A.size(); ++i) {
    if (!A[i].is_array()) throw InvalidBody("polytope file: rows of 'A' must be arrays");
    if (static_cast<int>(A[i].size()) != d) {
      throw DimensionMismatch("polytope file: row " + std::to_string(i) + " has " +
                              std::to_string(A[i].size()) + " entries, expected d=" +
                              std::to_string(d));
    }
    for (int j = 0; j < d; ++j) mA(i, j) = A[i][j].get<double>();
    vb(i) = b[i].get<double>();
  }
  return ConvexBody::hpolytope(mA, vb);
}

ConvexBody parse_body_spec(const std::string& spec, int d) {
  if (d < 1 || d > kMaxDimension) throw ConfigError("d out of range for body spec");
  SpecReader r(spec);
  const std::size_t name_at = r.pos();
  const std::string name = r.word();
  const bool has_args = r.peek() == ':';
  if (!r.done() && !has_args) r.fail("expected ':' or end of spec");
  if (has_args) r.expect(':');

  if (name == "ball") {
    double radius = 1.0;
    if (has_args) {
      key(r, "r");
      const std::size_t at = r.pos();
      radius = r.real();
      if (!(radius > 0.0)) r.fail_at("radius must be positive", at);
    }
    r.finish();
    return ConvexBody::ball(Eigen::VectorXd::Zero(d), radius);
  }
  if (name == "ellipsoid") {
    if (!has_args) r.fail("ellipsoid needs axes=<a1,...,ad>");
    key(r, "axes");
    const std::size_t at = r.pos();
    const std::vector<double> axes = real_list(r, ',');
    r.finish();
    if (static_cast<int>(axes.size()) != d) {
      throw DimensionMismatch("ellipsoid has " + std::to_string(axes.size()) +
                              " axes, expected d=" + std::to_string(d));
    }
    for (double a : axes) {
      if (!(a > 0.0)) r.fail_at("axes must be positive", at);
    }
    return ConvexBody::ellipsoid_axes(Eigen::VectorXd::Zero(d),
                                      Eigen::Map<const Eigen::VectorXd>(axes.data(), d));
  }
  if (name == "box") {
    if (!has_args) r.fail("box needs half=<h> or bounds=<l1,u1;...>");
    const std::size_t at = r.pos();
    const std::string k = r.word();
    r.expect('=');
    if (k == "half") {
      const std::size_t vat = r.pos();
      const double h = r.real();
      r.finish();
      if (!(h > 0.0)) r.fail_at("half width must be positive", vat);
      return ConvexBody::cube(d, h);
    }
    if (k == "bounds") {
      Eigen::VectorXd lower(d), upper(d);
      int i = 0;
      for (;;) {
        const std::size_t pair_at = r.pos();
        const double lo = r.real();
        r.expect(',');
        const double hi = r.real();
        if (i >= d) r.fail_at("more than d bound pairs", pair_at);
        if (!(hi > lo)) r.fail_at("upper bound must exceed lower bound", pair_at);
        lower(i) = lo;
        upper(i) = hi;
        ++i;
        if (r.peek() != ';') break;
        r.expect(';');
      }
      r.finish();
      if (i != d) {
        throw DimensionMismatch("box has " + std::to_string(i) + " bound pairs, expected d=" +
                                std::to_string(d));
      }
      return ConvexBody::box(lower, upper);
    }
    r.fail_at("expected key 'half' or 'bounds'", at);
  }
  if (name == "simplex") {
    if (has_args) r.fail("simplex takes no arguments");
    return ConvexBody::standard_simplex(d);
  }
  if (name == "polytope") {
    if (!has_args) r.fail("polytope needs file=<path>");
    key(r, "file");
    const std::size_t at = r.pos();
    const std::string path = r.rest();
    if (path.empty()) r.fail_at("empty polytope path", at);
    return load_polytope_file(path, d);
  }
  r.fail_at("unknown body '" + name + "'", name_at);
}

}  // namespace sectionlab
