#pragma once

#include <algorithm>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "forms.hpp"
#include "geometry.hpp"
#include "surface.hpp"

namespace delpezzo {

struct unknown_surface : std::out_of_range {
  using std::out_of_range::out_of_range;
};

namespace detail {

inline IntVector basis_vector(std::size_t n, std::size_t i) {
  IntVector v(n, 0);
  v[i] = 1;
  return v;
}

inline Line span_of(IntVector a, IntVector b) { return Line::from_basis({std::move(a), std::move(b)}); }

inline Line coordinate_line(std::size_t n, std::size_t i, std::size_t j) {
  return span_of(basis_vector(n, i), basis_vector(n, j));
}

inline SurfaceRecord quartic(std::string id, const char *q1, const char *q2, int lines,
                             std::string sing, std::vector<std::string> notes = {}) {
  SurfaceRecord r;
  r.id = std::move(id);
  r.ambient_dim = 4;
  r.equations = {parse_form(q1, 5), parse_form(q2, 5)};
  r.singularity_type = std::move(sing);
  r.geometric_line_count = lines;
  r.notes = std::move(notes);
  return r;
}

inline SurfaceRecord cubic(std::string id, const char *c, int lines, std::string sing,
                           std::vector<std::string> notes = {}) {
  SurfaceRecord r;
  r.id = std::move(id);
  r.ambient_dim = 3;
  r.equations = {parse_form(c, 4)};
  r.singularity_type = std::move(sing);
  r.geometric_line_count = lines;
  r.notes = std::move(notes);
  return r;
}

/// The six lines of the 3A1 surface: two coordinate planes x_i = x_2 = 0
/// (i in {0,1}) and one diagonal plane, each cut by x_3 = 0 or x_4 = 0.
inline std::vector<Line> lines_3a1(const IntVector &diagonal) {
  std::vector<Line> out;
  for (std::size_t j : {3u, 4u}) {
    std::size_t other = j == 3 ? 4 : 3;
    out.push_back(coordinate_line(5, 1, other));
    out.push_back(coordinate_line(5, 0, other));
    out.push_back(span_of(diagonal, basis_vector(5, other)));
  }
  std::sort(out.begin(), out.end());
  return out;
}

inline std::vector<SurfaceRecord> build_catalog() {
  std::vector<SurfaceRecord> c;
  c.push_back(quartic("q-i", "x0*x1 + x2*x3", "x0*x3 + x1*x2 + x2*x4 + x3*x4", 12, "A1"));
  c.push_back(quartic("q-ii", "x0*x1 + x2*x3", "x0*x3 + x1*x2 + x2*x4 + x4^2", 9, "2A1"));
  c.push_back(quartic("q-iii", "x0*x1 + x2^2", "x0*x2 + x1*x2 + x3*x4", 8, "2A1"));
  c.push_back(quartic("q-iv", "x0*x1 + x2*x3", "x2*x3 + x0*x4 + x1*x4 + x2*x4 - x3*x4", 8, "A2",
                      {"second quadric expanded from x2*x3 + x4*(x0 + x1 + x2 - x3)"}));
  {
    auto s3 = quartic("q-v", "x0*x1 + x2^2", "x1*x2 + x2^2 + x3*x4", 6, "3A1",
                      {"split; neither toric nor an equivariant compactification of Ga^2"});
    s3.picard_rank = 6;
    // x0 - x2 = x1 + x2 = 0 is the diagonal plane for this sign convention.
    s3.known_lines = lines_3a1({1, -1, 1, 0, 0});
    s3.known_singular_points = {normalize({1, 0, 0, 0, 0}), normalize({0, 0, 0, 1, 0}),
                                normalize({0, 0, 0, 0, 1})};
    c.push_back(std::move(s3));
  }
  c.push_back(quartic("q-vi", "x0*x1 + x2*x3", "x1^2 + x2^2 + x3*x4", 6, "A1+A2"));
  c.push_back(quartic("q-vii", "x0*x1 + x2*x3", "x1*x3 + x2^2 + x4^2", 5, "A3"));
  c.push_back(quartic("q-viii", "x0*x1 + x2^2", "x0^2 + 2*x0*x1 + x1^2 + x2*x4 + x3^2", 4, "A3",
                      {"second quadric expanded from (x0 + x1)^2 + x2*x4 + x3^2"}));
  c.push_back(quartic("q-ix", "x0*x1 + x2^2", "x2^2 + x3*x4", 4, "4A1", {"toric"}));
  c.push_back(quartic("q-x", "x0*x1 + x2^2", "x1*x2 + x3*x4", 4, "2A1+A2", {"toric"}));
  c.push_back(quartic("q-xi", "x0*x1 + x2^2", "x0^2 + x2*x4 + x3^2", 3, "A1+A3"));
  c.push_back(quartic("q-xii", "x0*x1 + x2*x3", "x0*x4 + x1*x3 + x2^2", 3, "A4"));
  {
    auto s2 = quartic("q-xiii", "x0*x1 + x2^2", "x0^2 + x1*x4 + x3^2", 2, "D4",
                      {"not split: lines x1 = x2 = x0 +- i*x3 = 0 are defined over Q(i)",
                       "C3 over Q in Lipman's notation"});
    s2.picard_rank = 4;
    c.push_back(std::move(s2));
  }
  c.push_back(quartic("q-xiv", "x0*x1 + x2^2", "x0^2 + x3*x4", 2, "2A1+A3", {"toric"}));
  {
    auto s1 = quartic("q-xv", "x0*x1 + x2^2", "x0*x4 + x1*x2 + x3^2", 1, "D5",
                      {"equivariant compactification of Ga^2", "unique line x0 = x2 = x3 = 0"});
    s1.picard_rank = 6;
    c.push_back(std::move(s1));
  }
  {
    auto work = quartic("q-v-work", "x0*x1 - x2^2", "x2^2 - x1*x2 + x3*x4", 6, "3A1",
                        {"working model of q-v used by the torsor parametrization"});
    work.picard_rank = 6;
    work.known_lines = lines_3a1({1, 1, 1, 0, 0});
    work.known_singular_points = {normalize({1, 0, 0, 0, 0}), normalize({0, 0, 0, 1, 0}),
                                  normalize({0, 0, 0, 0, 1})};
    work.model_of = "q-v";
    work.substitution = IntMatrix{{-1, 0, 0, 0, 0}, {0, 1, 0, 0, 0}, {0, 0, -1, 0, 0},
                                  {0, 0, 0, 1, 0}, {0, 0, 0, 0, 1}};
    c.push_back(std::move(work));
  }
  {
    auto s4 = cubic("c-3a2", "x0^3 - x1*x2*x3", 3, "3A2", {"toric"});
    s4.picard_rank = 7;
    s4.known_lines = {coordinate_line(4, 2, 3), coordinate_line(4, 1, 3), coordinate_line(4, 1, 2)};
    std::sort(s4.known_lines.begin(), s4.known_lines.end());
    c.push_back(std::move(s4));
  }
  {
    auto s5 = cubic("c-cayley", "x0*x1*x2 + x0*x1*x3 + x0*x2*x3 + x1*x2*x3", 9, "4A1",
                    {"Cayley cubic; all 9 lines defined over Q"});
    s5.picard_rank = 7;
    for (std::size_t i = 0; i < 4; ++i)
      for (std::size_t j = i + 1; j < 4; ++j) s5.known_lines.push_back(coordinate_line(4, i, j));
    s5.known_lines.push_back(span_of({1, -1, 0, 0}, {0, 0, 1, -1}));
    s5.known_lines.push_back(span_of({1, 0, -1, 0}, {0, 1, 0, -1}));
    s5.known_lines.push_back(span_of({1, 0, 0, -1}, {0, 1, -1, 0}));
    std::sort(s5.known_lines.begin(), s5.known_lines.end());
    c.push_back(std::move(s5));
  }
  {
    auto s6 = cubic("c-d4", "x1*x2*x3 - x0*x1^2 - x0*x2^2 - x0*x3^2 - 2*x0*x1*x2 - 2*x0*x1*x3 - 2*x0*x2*x3",
                    6, "D4", {"cubic expanded from x1*x2*x3 - x0*(x1 + x2 + x3)^2"});
    s6.picard_rank = 7;
    c.push_back(std::move(s6));
  }
  {
    auto s7 = cubic("c-e6", "x1*x2^2 + x2*x0^2 + x3^3", 1, "E6",
                    {"universal torsor: τℓξℓ³ξ₄²ξ₅+τ₂²ξ₂+τ₁³ξ₁²ξ₃=0 in A^10 (ξ₆ absent)"});
    s7.picard_rank = 7;
    s7.known_lines = {coordinate_line(4, 0, 1)};
    s7.known_singular_points = {normalize({0, 1, 0, 0})};
    c.push_back(std::move(s7));
  }
  return c;
}

} // namespace detail

/// All embedded records in a fixed order: quartic types i..xv, the working
/// model of type v, then the four cubic surfaces.
[[nodiscard]] inline const std::vector<SurfaceRecord> &catalog_list() {
  static const std::vector<SurfaceRecord> records = detail::build_catalog();
  return records;
}

[[nodiscard]] inline const SurfaceRecord &catalog_get(std::string_view id) {
  for (const auto &r : catalog_list())
    if (r.id == id) return r;
  throw unknown_surface("unknown surface id: " + std::string(id));
}

// ---------------------------------------------------------------------------
// Text format

namespace detail {

inline std::string join_vector(const IntVector &v) {
  std::string s;
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i) s += ',';
    s += std::to_string(v[i]);
  }
  return s;
}

inline std::string join_matrix(const IntMatrix &m) {
  std::string s;
  for (std::size_t i = 0; i < m.size(); ++i) {
    if (i) s += ';';
    s += join_vector(m[i]);
  }
  return s;
}

inline std::string format_form(const IntForm &f) {
  std::string s;
  for (const auto &[e, c] : f.terms()) {
    if (!s.empty()) s += ' ';
    s += std::to_string(c) + ':' + join_vector(IntVector(e.begin(), e.end()));
  }
  return s;
}

inline std::string trim(std::string_view s) {
  auto b = s.find_first_not_of(" \t\r");
  if (b == std::string_view::npos) return {};
  auto e = s.find_last_not_of(" \t\r");
  return std::string(s.substr(b, e - b + 1));
}

inline IntVector parse_vector(const std::string &s) {
  IntVector v;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ',')) v.push_back(std::stoll(trim(item)));
  return v;
}

inline IntMatrix parse_matrix(const std::string &s) {
  IntMatrix m;
  std::stringstream ss(s);
  std::string row;
  while (std::getline(ss, row, ';')) m.push_back(parse_vector(row));
  return m;
}

inline IntForm parse_monomials(const std::string &s, int num_vars, int degree) {
  std::vector<IntForm::Term> terms;
  std::stringstream ss(s);
  std::string tok;
  while (ss >> tok) {
    auto colon = tok.find(':');
    if (colon == std::string::npos) throw std::invalid_argument("monomial missing ':' : " + tok);
    auto e = parse_vector(tok.substr(colon + 1));
    terms.push_back({std::stoll(tok.substr(0, colon)), Exponent(e.begin(), e.end())});
  }
  return IntForm(num_vars, degree, terms);
}

} // namespace detail

inline void write_catalog(std::ostream &out, const std::vector<SurfaceRecord> &records) {
  out << "# del Pezzo surface catalog\n"
      << "# monomials are coef:e0,...,en; matrices are comma-separated rows joined by ';'\n";
  for (const auto &r : records) {
    out << '\n';
    out << "id=" << r.id << '\n';
    out << "dim=" << r.ambient_dim << '\n';
    out << "deg=" << r.equation_degree() << '\n';
    for (const auto &eq : r.equations) out << "eq= " << detail::format_form(eq) << '\n';
    for (const auto &l : r.known_lines) out << "line= " << detail::join_matrix(l.basis()) << '\n';
    for (const auto &p : r.known_singular_points) out << "singpt= " << detail::join_vector(p.coords()) << '\n';
    out << "sing=" << r.singularity_type << '\n';
    out << "nlines=" << r.geometric_line_count << '\n';
    out << "rho=" << (r.picard_rank ? std::to_string(*r.picard_rank) : std::string("?")) << '\n';
    if (r.model_of) out << "model=" << *r.model_of << '\n';
    if (r.substitution) out << "subst= " << detail::join_matrix(*r.substitution) << '\n';
    for (const auto &n : r.notes) out << "note=" << n << '\n';
  }
}

[[nodiscard]] inline std::string catalog_text(const std::vector<SurfaceRecord> &records) {
  std::ostringstream os;
  write_catalog(os, records);
  return os.str();
}

/// Parses the text format; throws std::invalid_argument with the line number on error.
[[nodiscard]] inline std::vector<SurfaceRecord> read_catalog(std::istream &in) {
  std::vector<SurfaceRecord> out;
  SurfaceRecord cur;
  bool open = false;
  int deg = 0;
  std::vector<std::string> raw_eqs;
  auto flush = [&] {
    if (!open) return;
    if (cur.id.empty()) throw std::invalid_argument("catalog record without id");
    for (const auto &e : raw_eqs)
      cur.equations.push_back(detail::parse_monomials(e, cur.ambient_dim + 1, deg));
    out.push_back(std::move(cur));
    cur = SurfaceRecord{};
    raw_eqs.clear();
    deg = 0;
    open = false;
  };
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    auto t = detail::trim(line);
    if (t.empty()) {
      flush();
      continue;
    }
    if (t.front() == '#') continue;
    auto eqpos = t.find('=');
    if (eqpos == std::string::npos)
      throw std::invalid_argument("catalog line " + std::to_string(lineno) + ": expected key=value");
    auto key = detail::trim(t.substr(0, eqpos));
    auto value = detail::trim(t.substr(eqpos + 1));
    try {
      if (key == "id") {
        flush();
        cur.id = value;
      } else if (key == "dim") {
        cur.ambient_dim = std::stoi(value);
      } else if (key == "deg") {
        deg = std::stoi(value);
      } else if (key == "eq") {
        raw_eqs.push_back(value);
      } else if (key == "line") {
        cur.known_lines.push_back(Line::from_basis(detail::parse_matrix(value)));
      } else if (key == "singpt") {
        cur.known_singular_points.push_back(ProjectivePoint::from_normalized(detail::parse_vector(value)));
      } else if (key == "sing") {
        cur.singularity_type = value;
      } else if (key == "nlines") {
        cur.geometric_line_count = std::stoi(value);
      } else if (key == "rho") {
        if (value != "?") cur.picard_rank = std::stoi(value);
      } else if (key == "model") {
        cur.model_of = value;
      } else if (key == "subst") {
        cur.substitution = detail::parse_matrix(value);
      } else if (key == "note") {
        cur.notes.push_back(value);
      } else {
        throw std::invalid_argument("unknown key '" + key + "'");
      }
    } catch (const std::invalid_argument &e) {
      throw std::invalid_argument("catalog line " + std::to_string(lineno) + ": " + e.what());
    } catch (const std::out_of_range &e) {
      throw std::invalid_argument("catalog line " + std::to_string(lineno) + ": " + e.what());
    }
    open = true;
  }
  flush();
  return out;
}

[[nodiscard]] inline std::vector<SurfaceRecord> read_catalog_file(const std::string &path) {
  std::ifstream in(path);
  if (!in) throw std::ios_base::failure("cannot open catalog file " + path);
  return read_catalog(in);
}

// ---------------------------------------------------------------------------
// Verification

struct RecordCheck {
  std::string id;
  bool passed = true;
  std::vector<std::string> reasons;

  void fail(std::string why) {
    passed = false;
    reasons.push_back(std::move(why));
  }
};

[[nodiscard]] inline RecordCheck verify_record(const SurfaceRecord &r,
                                               const std::vector<SurfaceRecord> &all) {
  RecordCheck c;
  c.id = r.id;
  const bool is_quartic = r.ambient_dim == 4;
  const std::size_t want_eqs = is_quartic ? 2 : 1;
  const int want_deg = is_quartic ? 2 : 3;
  if (r.ambient_dim != 3 && r.ambient_dim != 4) c.fail("ambient dimension must be 3 or 4");
  if (r.equations.size() != want_eqs) c.fail("wrong number of equations");
  for (const auto &eq : r.equations) {
    if (eq.degree() != want_deg) c.fail("equation has wrong degree");
    if (eq.num_vars() != r.ambient_dim + 1) c.fail("equation has wrong number of variables");
  }
  if (!c.passed) return c;

  for (const auto &l : r.known_lines) {
    if (l.ambient_size() != r.num_coords()) {
      c.fail("line " + detail::join_matrix(l.basis()) + " has wrong dimension");
      continue;
    }
    if (!contains_line(r, l)) c.fail("line " + detail::join_matrix(l.basis()) + " is not on the surface");
  }
  {
    auto sorted = r.known_lines;
    std::sort(sorted.begin(), sorted.end());
    if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end()) c.fail("duplicate known line");
  }
  if (!r.known_lines.empty() && static_cast<int>(r.known_lines.size()) != r.geometric_line_count)
    c.fail("known line list has " + std::to_string(r.known_lines.size()) + " lines, expected " +
           std::to_string(r.geometric_line_count));
  for (const auto &p : r.known_singular_points) {
    auto name = detail::join_vector(p.coords());
    if (p.size() != r.num_coords()) {
      c.fail("singular point " + name + " has wrong dimension");
    } else if (!on_surface(r, p)) {
      c.fail("singular point " + name + " is not on the surface");
    } else if (!is_singular_point(r, p)) {
      c.fail("point " + name + " is not singular");
    }
  }
  if (r.model_of) {
    auto base = std::find_if(all.begin(), all.end(), [&](const auto &o) { return o.id == *r.model_of; });
    if (base == all.end()) {
      c.fail("model_of refers to unknown record " + *r.model_of);
    } else if (!r.substitution) {
      c.fail("alternative model without substitution witness");
    } else if (base->equations.size() != r.equations.size()) {
      c.fail("model has a different number of equations");
    } else {
      for (std::size_t i = 0; i < r.equations.size(); ++i)
        if (!equal_up_to_sign(base->equations[i].substitute(*r.substitution), r.equations[i]))
          c.fail("substitution does not carry equation " + std::to_string(i) + " of " + base->id);
    }
  }
  return c;
}

[[nodiscard]] inline std::vector<RecordCheck> verify_catalog(const std::vector<SurfaceRecord> &records) {
  std::vector<RecordCheck> out;
  out.reserve(records.size());
  for (const auto &r : records) out.push_back(verify_record(r, records));
  return out;
}

[[nodiscard]] inline std::vector<RecordCheck> verify_catalog() { return verify_catalog(catalog_list()); }

} // namespace delpezzo
