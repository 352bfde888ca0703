#include "spinal/algebra.hpp"

#include <algorithm>
#include <cctype>
#include <numeric>
#include <sstream>

namespace spinal {

namespace {

std::uint64_t checked_pow(std::uint64_t base, std::uint64_t exp, std::uint64_t limit) {
  std::uint64_t result = 1;
  for (std::uint64_t i = 0; i < exp; ++i) {
    result *= base;
    if (result > limit) return limit + 1;
  }
  return result;
}

std::string strip_spaces(const std::string& text) {
  std::string out;
  out.reserve(text.size());
  for (char c : text)
    if (!std::isspace(static_cast<unsigned char>(c))) out.push_back(c);
  return out;
}

// Minimal recursive-descent reader over a whitespace-free string.
class Reader {
public:
  explicit Reader(std::string text) : text_(std::move(text)) {}

  bool done() const { return pos_ == text_.size(); }
  char peek() const { return done() ? '\0' : text_[pos_]; }

  void expect(char c) {
    if (peek() != c) fail(std::string("expected '") + c + "'");
    ++pos_;
  }

  bool accept(char c) {
    if (peek() != c) return false;
    ++pos_;
    return true;
  }

  std::uint64_t number() {
    if (!std::isdigit(static_cast<unsigned char>(peek()))) fail("expected a number");
    std::uint64_t value = 0;
    while (std::isdigit(static_cast<unsigned char>(peek()))) {
      value = value * 10 + static_cast<std::uint64_t>(peek() - '0');
      if (value > 0xffffffffULL) fail("number too large");
      ++pos_;
    }
    return value;
  }

  std::vector<Residue> tuple() {
    std::vector<Residue> out;
    expect('(');
    if (accept(')')) return out;
    do {
      out.push_back(static_cast<Residue>(number()));
    } while (accept(','));
    expect(')');
    return out;
  }

  std::string word() {
    std::string out;
    while (std::isalpha(static_cast<unsigned char>(peek()))) out.push_back(text_[pos_++]);
    return out;
  }

  [[noreturn]] void fail(const std::string& what) const {
    throw ParseError(what + " at offset " + std::to_string(pos_) + " in '" + text_ + "'");
  }

private:
  std::string text_;
  std::size_t pos_ = 0;
};

std::vector<Epimorphism> parse_epi_list(Reader& in) {
  std::vector<Epimorphism> out;
  in.expect('[');
  if (in.accept(']')) return out;
  do {
    out.push_back(Epimorphism{in.tuple()});
  } while (in.accept(','));
  in.expect(']');
  return out;
}

std::string format_epi_list(const std::vector<Epimorphism>& list) {
  std::string out = "[";
  for (std::size_t i = 0; i < list.size(); ++i) {
    if (i) out += ",";
    out += format_residues(list[i].coeffs);
  }
  return out + "]";
}

int parse_int_arg(const PresetArgs& args, const std::string& key, std::optional<int> fallback) {
  auto it = args.find(key);
  if (it == args.end()) {
    if (!fallback) throw ParameterError("preset argument '" + key + "' is required");
    return *fallback;
  }
  try {
    std::size_t used = 0;
    int value = std::stoi(it->second, &used);
    if (used != it->second.size()) throw ParameterError("");
    return value;
  } catch (const std::exception&) {
    throw ParameterError("preset argument '" + key + "' is not an integer: " + it->second);
  }
}

std::vector<Epimorphism> grigorchuk_p_tokens(int p, const std::string& text) {
  std::vector<Epimorphism> out;
  if (strip_spaces(text).empty()) return out;
  std::stringstream ss(strip_spaces(text));
  std::string token;
  while (std::getline(ss, token, ',')) {
    if (token == "pi") {
      out.push_back(Epimorphism{{0, 1}});
      continue;
    }
    int i = 0;
    try {
      std::size_t used = 0;
      i = std::stoi(token, &used);
      if (used != token.size()) throw ParameterError("");
    } catch (const std::exception&) {
      throw ParameterError("bad grigorchuk-p token '" + token + "'");
    }
    if (i < 0 || i >= p) throw ParameterError("grigorchuk-p index out of range: " + token);
    out.push_back(Epimorphism{{1, static_cast<Residue>(i)}});
  }
  return out;
}

} // namespace

std::uint64_t Params::b_order() const {
  return checked_pow(static_cast<std::uint64_t>(d), static_cast<std::uint64_t>(m),
                     kEnumerationGuard);
}

std::size_t Params::generator_count() const {
  return static_cast<std::size_t>(d - 1) + static_cast<std::size_t>(b_order() - 1);
}

Params make_params(int d, int m) {
  if (d < 2) throw ParameterError("d must be at least 2");
  if (m < 1) throw ParameterError("m must be at least 1");
  Params p{d, m};
  if (p.b_order() > kEnumerationGuard) throw GuardError("d^m exceeds 10^6");
  return p;
}

bool BElement::is_zero() const {
  return std::all_of(coords.begin(), coords.end(), [](Residue r) { return r == 0; });
}

BElement b_from_index(const Params& params, std::uint64_t index) {
  BElement b;
  b.coords.resize(static_cast<std::size_t>(params.m));
  for (auto& c : b.coords) {
    c = static_cast<Residue>(index % static_cast<std::uint64_t>(params.d));
    index /= static_cast<std::uint64_t>(params.d);
  }
  return b;
}

std::uint64_t b_index(const Params& params, const BElement& b) {
  check_b_element(params, b);
  std::uint64_t index = 0;
  for (auto it = b.coords.rbegin(); it != b.coords.rend(); ++it)
    index = index * static_cast<std::uint64_t>(params.d) + *it;
  return index;
}

std::vector<BElement> b_elements(const Params& params) {
  std::vector<BElement> out;
  const auto order = params.b_order();
  out.reserve(order);
  for (std::uint64_t i = 0; i < order; ++i) out.push_back(b_from_index(params, i));
  return out;
}

std::vector<BElement> nonzero_b_elements(const Params& params) {
  auto all = b_elements(params);
  all.erase(all.begin());
  return all;
}

void check_b_element(const Params& params, const BElement& b) {
  if (b.coords.size() != static_cast<std::size_t>(params.m))
    throw ParameterError("B element has " + std::to_string(b.coords.size()) +
                         " coordinates, expected " + std::to_string(params.m));
  for (Residue c : b.coords)
    if (c >= static_cast<Residue>(params.d)) throw ParameterError("B coordinate out of range");
}

void check_epimorphism(const Params& params, const Epimorphism& pi) {
  if (pi.coeffs.size() != static_cast<std::size_t>(params.m))
    throw ParameterError("epimorphism has " + std::to_string(pi.coeffs.size()) +
                         " coefficients, expected " + std::to_string(params.m));
  std::uint64_t g = static_cast<std::uint64_t>(params.d);
  for (Residue c : pi.coeffs) {
    if (c >= static_cast<Residue>(params.d))
      throw ParameterError("epimorphism coefficient out of range");
    g = std::gcd(g, static_cast<std::uint64_t>(c));
  }
  if (g != 1) throw ParameterError("linear form " + format_residues(pi.coeffs) + " is not onto Z/" +
                                   std::to_string(params.d));
}

Residue eval_epi(const Params& params, const Epimorphism& pi, const BElement& b) {
  if (pi.coeffs.size() != b.coords.size() || b.coords.size() != static_cast<std::size_t>(params.m))
    throw ParameterError("vector lengths differ from m");
  std::uint64_t sum = 0;
  for (std::size_t i = 0; i < b.coords.size(); ++i)
    sum = (sum + static_cast<std::uint64_t>(pi.coeffs[i]) * b.coords[i]) %
          static_cast<std::uint64_t>(params.d);
  return static_cast<Residue>(sum);
}

std::vector<BElement> kernel(const Params& params, const Epimorphism& pi) {
  check_epimorphism(params, pi);
  std::vector<BElement> out;
  for (auto& b : b_elements(params))
    if (eval_epi(params, pi, b) == 0) out.push_back(std::move(b));
  return out;
}

OmegaSequence::OmegaSequence(std::vector<Epimorphism> preperiod, std::vector<Epimorphism> period)
    : preperiod_(std::move(preperiod)), period_(std::move(period)) {
  if (period_.empty()) throw ParameterError("period of omega must be nonempty");
}

const Epimorphism& OmegaSequence::at(std::size_t n) const {
  if (n < preperiod_.size()) return preperiod_[n];
  return period_[(n - preperiod_.size()) % period_.size()];
}

bool OmegaSequence::recurs(const Epimorphism& pi) const {
  return std::find(period_.begin(), period_.end(), pi) != period_.end();
}

OmegaSequence validate_omega(const Params& params, std::vector<Epimorphism> preperiod,
                             std::vector<Epimorphism> period) {
  if (period.empty()) throw ParameterError("period of omega must be nonempty");
  for (const auto& pi : preperiod) check_epimorphism(params, pi);
  for (const auto& pi : period) check_epimorphism(params, pi);

  OmegaSequence omega(std::move(preperiod), std::move(period));
  const std::size_t pre = omega.preperiod().size();
  const std::size_t total = pre + omega.period().size();
  const auto elements = nonzero_b_elements(params);

  // For i >= |pre| the tail {omega_j : j >= i} is always the whole period.
  for (std::size_t i = 0; i < total; ++i) {
    const std::size_t last = std::max(total, i + omega.period().size());
    for (const auto& b : elements) {
      bool in_all = true;
      for (std::size_t j = i; j < last && in_all; ++j)
        in_all = eval_epi(params, omega.at(j), b) == 0;
      if (in_all) throw InvalidOmega(i);
    }
  }
  return omega;
}

OmegaSequence shift_omega(const OmegaSequence& omega) {
  std::vector<Epimorphism> pre = omega.preperiod();
  std::vector<Epimorphism> per = omega.period();
  if (!pre.empty()) {
    pre.erase(pre.begin());
  } else {
    std::rotate(per.begin(), per.begin() + 1, per.end());
  }
  return OmegaSequence(std::move(pre), std::move(per));
}

SpinalGroup make_group(const Params& params, std::vector<Epimorphism> preperiod,
                       std::vector<Epimorphism> period) {
  return SpinalGroup{params, validate_omega(params, std::move(preperiod), std::move(period))};
}

AutB identity_aut(const Params& params) {
  const auto m = static_cast<std::size_t>(params.m);
  AutB rho;
  rho.matrix.assign(m, std::vector<Residue>(m, 0));
  for (std::size_t i = 0; i < m; ++i) rho.matrix[i][i] = 1;
  return rho;
}

namespace {

std::int64_t det_rec(const std::vector<std::vector<std::int64_t>>& a, std::int64_t mod) {
  const std::size_t n = a.size();
  if (n == 1) return a[0][0] % mod;
  std::int64_t total = 0;
  for (std::size_t col = 0; col < n; ++col) {
    if (a[0][col] == 0) continue;
    std::vector<std::vector<std::int64_t>> minor;
    for (std::size_t r = 1; r < n; ++r) {
      std::vector<std::int64_t> row;
      for (std::size_t c = 0; c < n; ++c)
        if (c != col) row.push_back(a[r][c]);
      minor.push_back(std::move(row));
    }
    std::int64_t term = a[0][col] * det_rec(minor, mod) % mod;
    total = (col % 2 == 0) ? (total + term) % mod : (total - term + mod) % mod;
  }
  return total;
}

void check_matrix_shape(const Params& params, const AutB& rho) {
  const auto m = static_cast<std::size_t>(params.m);
  if (rho.matrix.size() != m) throw ParameterError("matrix must be m x m");
  for (const auto& row : rho.matrix) {
    if (row.size() != m) throw ParameterError("matrix must be m x m");
    for (Residue r : row)
      if (r >= static_cast<Residue>(params.d)) throw ParameterError("matrix entry out of range");
  }
}

} // namespace

Residue determinant_mod(const Params& params, const AutB& rho) {
  check_matrix_shape(params, rho);
  std::vector<std::vector<std::int64_t>> a;
  for (const auto& row : rho.matrix) a.emplace_back(row.begin(), row.end());
  return static_cast<Residue>(det_rec(a, params.d));
}

bool is_invertible(const Params& params, const AutB& rho) {
  return std::gcd(static_cast<std::int64_t>(determinant_mod(params, rho)),
                  static_cast<std::int64_t>(params.d)) == 1;
}

Epimorphism compose(const Params& params, const Epimorphism& pi, const AutB& rho) {
  const auto m = static_cast<std::size_t>(params.m);
  Epimorphism out;
  out.coeffs.assign(m, 0);
  for (std::size_t j = 0; j < m; ++j) {
    std::uint64_t sum = 0;
    for (std::size_t i = 0; i < m; ++i)
      sum += static_cast<std::uint64_t>(pi.coeffs[i]) * rho.matrix[i][j];
    out.coeffs[j] = static_cast<Residue>(sum % static_cast<std::uint64_t>(params.d));
  }
  return out;
}

AutB multiply(const Params& params, const AutB& lhs, const AutB& rhs) {
  const auto m = static_cast<std::size_t>(params.m);
  AutB out;
  out.matrix.assign(m, std::vector<Residue>(m, 0));
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = 0; j < m; ++j) {
      std::uint64_t sum = 0;
      for (std::size_t k = 0; k < m; ++k)
        sum += static_cast<std::uint64_t>(lhs.matrix[i][k]) * rhs.matrix[k][j];
      out.matrix[i][j] = static_cast<Residue>(sum % static_cast<std::uint64_t>(params.d));
    }
  return out;
}

std::optional<AutB> detect_self_similar(const SpinalGroup& group) {
  const auto& params = group.params;
  const auto m = static_cast<std::size_t>(params.m);
  const auto d = static_cast<std::uint64_t>(params.d);
  const std::uint64_t space = checked_pow(d, m * m, kEnumerationGuard);
  if (space > kEnumerationGuard)
    throw UnsupportedError("self-similarity search space d^(m*m) exceeds 10^6");

  const auto& omega = group.omega;
  const std::size_t horizon = omega.preperiod().size() + 2 * omega.period().size();

  AutB rho;
  rho.matrix.assign(m, std::vector<Residue>(m, 0));
  for (std::uint64_t code = 0; code < space; ++code) {
    // Entry (0,0) is the most significant digit.
    std::uint64_t rest = code;
    for (std::size_t k = m * m; k-- > 0;) {
      rho.matrix[k / m][k % m] = static_cast<Residue>(rest % d);
      rest /= d;
    }
    if (!is_invertible(params, rho)) continue;

    // omega_0 rho^n repeats with the same period once it matches up to
    // |pre| + |per|, so the extra period is redundant but cheap.
    Epimorphism current = omega.at(0);
    bool ok = true;
    for (std::size_t n = 1; n <= horizon && ok; ++n) {
      current = compose(params, current, rho);
      ok = current == omega.at(n);
    }
    if (ok) return rho;
  }
  return std::nullopt;
}

std::vector<std::string> preset_names() {
  return {"dihedral", "grigorchuk", "fabrykowski-gupta", "grigorchuk-p", "sunic"};
}

SpinalGroup preset(const std::string& name, const PresetArgs& args) {
  if (name == "dihedral") return make_group(make_params(2, 1), {}, {Epimorphism{{1}}});
  if (name == "grigorchuk")
    return make_group(make_params(2, 2), {},
                      {Epimorphism{{0, 1}}, Epimorphism{{1, 0}}, Epimorphism{{1, 1}}});
  if (name == "fabrykowski-gupta") return make_group(make_params(3, 1), {}, {Epimorphism{{1}}});
  if (name == "grigorchuk-p") {
    const int p = parse_int_arg(args, "p", std::nullopt);
    const auto params = make_params(p, 2);
    auto pre_it = args.find("pre");
    auto per_it = args.find("per");
    if (per_it == args.end()) throw ParameterError("preset argument 'per' is required");
    auto pre = pre_it == args.end() ? std::vector<Epimorphism>{}
                                    : grigorchuk_p_tokens(p, pre_it->second);
    return make_group(params, std::move(pre), grigorchuk_p_tokens(p, per_it->second));
  }
  if (name == "sunic") {
    const int p = parse_int_arg(args, "p", std::nullopt);
    const int m = parse_int_arg(args, "m", 1);
    const auto params = make_params(p, m);
    Epimorphism alpha;
    if (auto it = args.find("alpha"); it != args.end()) {
      alpha.coeffs = parse_residues(it->second);
    } else {
      alpha.coeffs.assign(static_cast<std::size_t>(m), 0);
      alpha.coeffs.back() = 1;
    }
    check_epimorphism(params, alpha);
    AutB rho = identity_aut(params);
    if (auto it = args.find("rho"); it != args.end()) rho = parse_matrix(it->second);
    if (!is_invertible(params, rho)) throw ParameterError("rho is not invertible mod p");

    std::vector<Epimorphism> period{alpha};
    Epimorphism current = compose(params, alpha, rho);
    while (current != alpha) {
      period.push_back(current);
      current = compose(params, current, rho);
    }
    return make_group(params, {}, std::move(period));
  }
  throw ParameterError("unknown preset '" + name + "'");
}

SpinalGroup parse_group_spec(const std::string& text) {
  Reader in(strip_spaces(text));
  std::optional<int> d, m;
  std::optional<std::vector<Epimorphism>> pre, per;
  while (!in.done()) {
    const std::string key = in.word();
    in.expect('=');
    if (key == "d") {
      d = static_cast<int>(in.number());
    } else if (key == "m") {
      m = static_cast<int>(in.number());
    } else if (key == "pre") {
      pre = parse_epi_list(in);
    } else if (key == "per") {
      per = parse_epi_list(in);
    } else {
      in.fail("unknown key '" + key + "'");
    }
    if (!in.done()) in.expect(';');
  }
  if (!d || !m || !pre || !per) throw ParseError("group spec needs d, m, pre and per: " + text);
  return make_group(make_params(*d, *m), std::move(*pre), std::move(*per));
}

std::string format_group_spec(const SpinalGroup& group) {
  return "d=" + std::to_string(group.params.d) + ";m=" + std::to_string(group.params.m) +
         ";pre=" + format_epi_list(group.omega.preperiod()) +
         ";per=" + format_epi_list(group.omega.period());
}

std::string format_residues(const std::vector<Residue>& values) {
  std::string out = "(";
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (i) out += ",";
    out += std::to_string(values[i]);
  }
  return out + ")";
}

std::vector<Residue> parse_residues(const std::string& text) {
  Reader in(strip_spaces(text));
  auto out = in.tuple();
  if (!in.done()) in.fail("trailing characters");
  return out;
}

AutB parse_matrix(const std::string& text) {
  Reader in(strip_spaces(text));
  AutB rho;
  in.expect('(');
  do {
    rho.matrix.push_back(in.tuple());
  } while (in.accept(','));
  in.expect(')');
  if (!in.done()) in.fail("trailing characters");
  return rho;
}

std::string format_matrix(const AutB& rho) {
  std::string out = "(";
  for (std::size_t i = 0; i < rho.matrix.size(); ++i) {
    if (i) out += ",";
    out += format_residues(rho.matrix[i]);
  }
  return out + ")";
}

} // namespace spinal
