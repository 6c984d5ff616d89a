#include "dicer/cli.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <map>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <utility>
#include <vector>

#include <json.hpp>

#include "dicer/complex.hpp"
#include "dicer/diced.hpp"
#include "dicer/homology.hpp"
#include "dicer/morse.hpp"

namespace dicer {

namespace {

using nlohmann::json;

// Exit-2 class of problems: unusable input rather than a failed property.
struct CliError : std::runtime_error {
  int code;
  explicit CliError(std::string msg, int c = 2) : std::runtime_error(std::move(msg)), code(c) {}
};

const char* yesno(bool b) { return b ? "yes" : "no"; }

bool is_fixture(const std::string& input) { return input.rfind("fixture:", 0) == 0; }

const Fixture& fixture_for(const std::string& input) {
  std::string name = input.substr(8);
  const Fixture* f = fixture_named(name);
  if (!f) throw CliError("unknown fixture: " + name);
  return *f;
}

json read_json(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw CliError("cannot open " + path);
  try {
    return json::parse(in);
  } catch (const json::parse_error& e) {
    throw CliError(path + ": " + e.what());
  }
}

Polytope polytope_from_json(const json& j, const std::string& path) {
  if (!j.is_object() || !j.contains("vertices") || !j["vertices"].is_array() ||
      j["vertices"].empty())
    throw CliError(path + ": expected an object with a nonempty \"vertices\" array");
  std::vector<Point> pts;
  size_t len = 0;
  for (const auto& row : j["vertices"]) {
    if (!row.is_array() || row.empty())
      throw CliError(path + ": every vertex must be a nonempty array of coordinates");
    Point p;
    for (const auto& c : row) {
      if (!c.is_number_integer())
        throw CliError(path + ": coordinate " + c.dump() +
                       " is not an integer; vertices must be exact lattice points");
      long v = c.get<long>();
      if (v < 0)
        throw CliError(path + ": negative coordinate " + std::to_string(v) +
                       "; polytopes live in the nonnegative orthant");
      p.push_back(Rational(v));
    }
    if (pts.empty())
      len = p.size();
    else if (p.size() != len)
      throw CliError(path + ": vertices have mixed coordinate counts");
    pts.push_back(std::move(p));
  }
  return convex_hull_vertices(pts);
}

MonomialIdeal ideal_from_json(const json& j, const std::string& path) {
  if (!j.is_object() || !j.contains("generators") || !j["generators"].is_array() ||
      j["generators"].empty())
    throw CliError(path + ": expected an object with a nonempty \"generators\" array");
  std::vector<Monomial> gens;
  size_t len = 0;
  for (const auto& row : j["generators"]) {
    if (!row.is_array() || row.empty())
      throw CliError(path + ": every generator must be a nonempty exponent array");
    std::vector<long> e;
    for (const auto& c : row) {
      if (!c.is_number_integer())
        throw CliError(path + ": exponent " + c.dump() + " is not an integer");
      long v = c.get<long>();
      if (v < 0) throw CliError(path + ": negative exponent " + std::to_string(v));
      e.push_back(v);
    }
    if (gens.empty())
      len = e.size();
    else if (e.size() != len)
      throw CliError(path + ": generators have mixed variable counts");
    gens.push_back(Monomial{std::move(e)});
  }
  return MonomialIdeal(std::move(gens));
}

Polytope load_polytope(const std::string& input) {
  if (is_fixture(input)) return fixture_for(input).polytope;
  return parse_polytope_file(input);
}

MixedSubdivision load_mixed(const std::string& input) {
  if (is_fixture(input)) {
    const Fixture& f = fixture_for(input);
    if (!f.mixed) throw CliError("fixture " + f.name + " has no mixed subdivision");
    return *f.mixed;
  }
  return parse_mixed_file(input);
}

MonomialIdeal load_ideal(const std::string& input) {
  if (is_fixture(input)) {
    const Fixture& f = fixture_for(input);
    auto d = is_diced(f.polytope);
    if (!d.diced)
      throw CliError("fixture " + f.name + " is not diced, its ideal is undefined", 1);
    return ideal_of_polytope(f.polytope);
  }
  json j = read_json(input);
  if (j.is_object() && j.contains("generators")) return ideal_from_json(j, input);
  Polytope p = polytope_from_json(j, input);
  auto d = is_diced(p);
  if (!d.diced)
    throw CliError(input + ": polytope is not diced, its ideal is undefined", 1);
  return ideal_of_polytope(p);
}

// --- text building blocks ---------------------------------------------------

std::string join_longs(const std::vector<long>& v) {
  std::string s;
  for (size_t i = 0; i < v.size(); ++i) {
    if (i) s += " ";
    s += std::to_string(v[i]);
  }
  return s;
}

std::vector<std::string> point_strings(const Point& p) {
  std::vector<std::string> out;
  for (const auto& c : p) out.push_back(to_string(c));
  return out;
}

json betti_json(const BettiTable& t) {
  json rows = json::array();
  for (const auto& [key, rank] : t.entries)
    rows.push_back({{"index", key.first}, {"degree", to_string(key.second)}, {"rank", rank}});
  return rows;
}

void print_betti(std::ostream& os, const BettiTable& t, const std::string& indent) {
  for (const auto& [key, rank] : t.entries)
    os << indent << "betti " << key.first << " " << to_string(key.second) << " " << rank << "\n";
}

void print_failures(std::ostream& os, const std::vector<ResolutionFailure>& failures) {
  for (const auto& f : failures)
    os << "  failure at " << to_string(f.degree) << ": reduced homology ranks "
       << join_longs(f.homology.dims) << "\n";
}

// --- figure export ----------------------------------------------------------

// Coordinates that actually vary across the vertex set, ascending.
std::vector<int> varying_coordinates(const PolyComplex& x) {
  std::vector<int> out;
  for (int i = 0; i < x.ambient; ++i) {
    const Rational& first = x.vertices.front()[i];
    for (const auto& v : x.vertices)
      if (v[i] != first) {
        out.push_back(i);
        break;
      }
  }
  return out;
}

// Exact decimal with up to four places, round half up.
std::string decimal(const Rational& q) {
  Rational scaled = q * 10000;
  Int num = boost::multiprecision::numerator(scaled);
  Int den = boost::multiprecision::denominator(scaled);
  bool neg = num < 0;
  if (neg) num = -num;
  Int rounded = (2 * num + den) / (2 * den);
  Int whole = rounded / 10000;
  Int frac = rounded % 10000;
  std::string s = (neg && rounded != 0 ? "-" : "") + to_string(whole);
  if (frac != 0) {
    std::string f = to_string(frac);
    f.insert(f.begin(), 4 - f.size(), '0');
    while (f.back() == '0') f.pop_back();
    s += "." + f;
  }
  return s;
}

// Boundary cycle of a polygonal 2-cell, walked over its edge graph starting
// at the smallest vertex toward its smaller neighbor.
std::vector<int> polygon_cycle(const PolyComplex& x, int cell) {
  std::map<int, std::vector<int>> adj;
  for (int e : x.facets_of[cell]) {
    const auto& vs = x.cells[e].vertex_ids;
    adj[vs[0]].push_back(vs[1]);
    adj[vs[1]].push_back(vs[0]);
  }
  int start = adj.begin()->first;
  std::vector<int> cycle{start};
  int prev = start;
  int cur = std::min(adj[start][0], adj[start][1]);
  while (cur != start) {
    cycle.push_back(cur);
    const auto& nb = adj[cur];
    int next = (nb[0] == prev) ? nb[1] : nb[0];
    prev = cur;
    cur = next;
  }
  return cycle;
}

std::string svg_export(const PolyComplex& x) {
  std::vector<int> vary = varying_coordinates(x);
  int u = vary.size() > 0 ? vary[0] : 0;
  int v = vary.size() > 1 ? vary[1] : -1;  // -1 draws flat on the axis
  auto coord = [&](const Point& p, int axis) { return axis < 0 ? Rational(0) : p[axis]; };

  Rational umin = coord(x.vertices[0], u), umax = umin;
  Rational vmin = coord(x.vertices[0], v), vmax = vmin;
  for (const auto& p : x.vertices) {
    umin = std::min(umin, coord(p, u));
    umax = std::max(umax, coord(p, u));
    vmin = std::min(vmin, coord(p, v));
    vmax = std::max(vmax, coord(p, v));
  }
  const Rational scale(120), margin(60);
  Rational width = (umax - umin) * scale + margin * 2;
  Rational height = (vmax - vmin) * scale + margin * 2;
  auto px = [&](const Point& p) { return margin + (coord(p, u) - umin) * scale; };
  auto py = [&](const Point& p) { return height - margin - (coord(p, v) - vmin) * scale; };

  std::ostringstream os;
  os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << decimal(width) << "\" height=\""
     << decimal(height) << "\" viewBox=\"0 0 " << decimal(width) << " " << decimal(height)
     << "\">\n";
  for (size_t c = 0; c < x.cells.size(); ++c) {
    if (x.cells[c].dim != 2) continue;
    os << "  <polygon points=\"";
    auto cycle = polygon_cycle(x, static_cast<int>(c));
    for (size_t i = 0; i < cycle.size(); ++i) {
      const Point& p = x.vertices[cycle[i]];
      os << (i ? " " : "") << decimal(px(p)) << "," << decimal(py(p));
    }
    os << "\" fill=\"#dce9f7\" stroke=\"none\"/>\n";
  }
  for (size_t c = 0; c < x.cells.size(); ++c) {
    if (x.cells[c].dim != 1) continue;
    const Point& a = x.vertices[x.cells[c].vertex_ids[0]];
    const Point& b = x.vertices[x.cells[c].vertex_ids[1]];
    os << "  <line x1=\"" << decimal(px(a)) << "\" y1=\"" << decimal(py(a)) << "\" x2=\""
       << decimal(px(b)) << "\" y2=\"" << decimal(py(b))
       << "\" stroke=\"#2f2f2f\" stroke-width=\"2\"/>\n";
  }
  for (size_t i = 0; i < x.vertices.size(); ++i) {
    const Point& p = x.vertices[i];
    bool lattice = is_lattice_point(p);
    os << "  <circle cx=\"" << decimal(px(p)) << "\" cy=\"" << decimal(py(p))
       << "\" r=\"5\" fill=\"" << (lattice ? "#ffffff" : "#cc3344")
       << "\" stroke=\"#2f2f2f\" stroke-width=\"1.5\"/>\n";
    std::string label = x.labeled() ? to_string(x.vertex_labels[i]) : to_string(p);
    os << "  <text x=\"" << decimal(px(p) + 9) << "\" y=\"" << decimal(py(p) - 9)
       << "\" font-family=\"monospace\" font-size=\"14\">" << label << "</text>\n";
  }
  os << "</svg>\n";
  return os.str();
}

std::string off_export(const PolyComplex& x) {
  std::vector<int> vary = varying_coordinates(x);
  auto axis = [&](size_t k) { return k < vary.size() ? vary[k] : -1; };
  int a0 = axis(0), a1 = axis(1), a2 = axis(2);
  auto coord = [&](const Point& p, int ax) { return ax < 0 ? Rational(0) : p[ax]; };

  long faces = 0, edges = 0;
  for (const auto& c : x.cells) {
    if (c.dim == 1) ++edges;
    if (c.dim == 2) ++faces;
  }
  std::ostringstream os;
  os << "OFF\n" << x.vertices.size() << " " << faces << " " << edges << "\n";
  for (const auto& p : x.vertices)
    os << decimal(coord(p, a0)) << " " << decimal(coord(p, a1)) << " " << decimal(coord(p, a2))
       << "\n";
  for (size_t c = 0; c < x.cells.size(); ++c) {
    if (x.cells[c].dim != 2) continue;
    auto cycle = polygon_cycle(x, static_cast<int>(c));
    os << cycle.size();
    for (int vtx : cycle) os << " " << vtx;
    os << "\n";
  }
  return os.str();
}

// --- commands ---------------------------------------------------------------

int cmd_diced(const RunConfig& cfg, std::ostream& os) {
  Polytope p = load_polytope(cfg.input);
  auto rep = is_diced(p);
  if (cfg.format == "json") {
    json j;
    j["command"] = "diced";
    j["diced"] = rep.diced;
    if (rep.witness) j["witness"] = point_strings(*rep.witness);
    os << j.dump(2) << "\n";
  } else {
    os << "diced: " << yesno(rep.diced) << "\n";
    if (rep.witness) os << "witness: " << to_string(*rep.witness) << "\n";
  }
  return rep.diced ? 0 : 1;
}

int cmd_sharp(const RunConfig& cfg, std::ostream& os) {
  Polytope p = load_polytope(cfg.input);
  auto d = is_diced(p);
  if (!d.diced) {
    if (cfg.format == "json") {
      json j;
      j["command"] = "sharp";
      j["diced"] = false;
      j["witness"] = point_strings(*d.witness);
      os << j.dump(2) << "\n";
    } else {
      os << "diced: no\n";
      os << "witness: " << to_string(*d.witness) << "\n";
    }
    return 1;
  }
  auto sh = sharp_cell(p);
  auto ts = is_totally_sharp(p);
  if (cfg.format == "json") {
    json j;
    j["command"] = "sharp";
    j["diced"] = true;
    j["label"] = to_string(sh.label);
    j["sharp"] = sh.is_sharp;
    j["note"] = sh.note;
    j["region"] = json::array();
    for (const auto& v : sh.region.vertices) j["region"].push_back(point_strings(v));
    if (sh.sigma) j["full_label_cell"] = to_string(*sh.sigma);
    j["totally_sharp"] = ts.totally_sharp;
    if (ts.witness_face) j["offending_face"] = to_string(*ts.witness_face);
    os << j.dump(2) << "\n";
  } else {
    os << "label: " << to_string(sh.label) << "\n";
    os << "sharp: " << yesno(sh.is_sharp) << "\n";
    os << "note: " << sh.note << "\n";
    os << "label region: " << (sh.region.vertices.empty() ? "empty" : to_string(sh.region))
       << "\n";
    if (sh.sigma) os << "full label cell: " << to_string(*sh.sigma) << "\n";
    os << "totally sharp: " << yesno(ts.totally_sharp) << "\n";
    if (ts.witness_face) os << "offending face: " << to_string(*ts.witness_face) << "\n";
  }
  return (sh.is_sharp && ts.totally_sharp) ? 0 : 1;
}

int cmd_subdivide(const RunConfig& cfg, std::ostream& os) {
  Polytope p = load_polytope(cfg.input);
  PolyComplex x = grid_subdivision(p);
  auto d = is_diced(x);
  if (d.diced) label_by_coordinates(x);
  auto f = f_vector(x);
  if (cfg.format == "json") {
    json j;
    j["command"] = "subdivide";
    j["diced"] = d.diced;
    if (d.witness) j["witness"] = point_strings(*d.witness);
    j["f_vector"] = f;
    j["vertices"] = json::array();
    for (const auto& v : x.vertices) j["vertices"].push_back(point_strings(v));
    if (x.labeled()) {
      j["vertex_labels"] = json::array();
      for (const auto& m : x.vertex_labels) j["vertex_labels"].push_back(to_string(m));
    }
    j["cells"] = json::array();
    for (const auto& c : x.cells) j["cells"].push_back({{"dim", c.dim}, {"vertices", c.vertex_ids}});
    os << j.dump(2) << "\n";
  } else {
    os << "f-vector: " << join_longs(f) << "\n";
    os << "diced: " << yesno(d.diced) << "\n";
    if (d.witness) os << "witness: " << to_string(*d.witness) << "\n";
    os << "vertices:\n";
    for (size_t i = 0; i < x.vertices.size(); ++i) {
      os << "  " << i << ": " << to_string(x.vertices[i]);
      if (x.labeled()) os << " label " << to_string(x.vertex_labels[i]);
      os << "\n";
    }
    os << "cells:\n";
    int dim = -1;
    for (const auto& c : x.cells) {
      if (c.dim != dim) {
        if (dim >= 0) os << "\n";
        dim = c.dim;
        os << "  dim " << dim << ":";
      }
      os << " {";
      for (size_t i = 0; i < c.vertex_ids.size(); ++i)
        os << (i ? " " : "") << c.vertex_ids[i];
      os << "}";
    }
    os << "\n";
  }
  return 0;
}

int report_not_diced(const RunConfig& cfg, const DicedReport& d, std::ostream& os) {
  if (cfg.format == "json") {
    json j;
    j["command"] = cfg.command;
    j["diced"] = false;
    j["witness"] = point_strings(*d.witness);
    os << j.dump(2) << "\n";
  } else {
    os << "diced: no\n";
    os << "witness: " << to_string(*d.witness) << "\n";
  }
  return 1;
}

int report_hypothesis_failure(const RunConfig& cfg, const std::string& what, std::ostream& os) {
  if (cfg.format == "json") {
    json j;
    j["command"] = cfg.command;
    j["hypothesis_failure"] = what;
    os << j.dump(2) << "\n";
  } else {
    os << "hypothesis failure: " << what << "\n";
  }
  return 1;
}

int cmd_morse(const RunConfig& cfg, std::ostream& os) {
  Polytope p = load_polytope(cfg.input);
  auto d = is_diced(p);
  if (!d.diced) return report_not_diced(cfg, d, os);
  PolyComplex x = make_complex({p});
  label_by_coordinates(x);
  SubdivisionMatching sm;
  try {
    sm = subdivision_matching(x, cfg.strict_reverify);
  } catch (const std::invalid_argument& e) {
    return report_hypothesis_failure(cfg, e.what(), os);
  }
  MorseComplexResult mc = morse_complex(sm.refined, sm.matching, &x);

  auto pairs = sm.matching.pairs;
  std::sort(pairs.begin(), pairs.end());
  if (cfg.format == "json") {
    json j;
    j["command"] = "morse";
    j["refined_f_vector"] = f_vector(sm.refined);
    j["pairs"] = json::array();
    for (auto [a, b] : pairs)
      j["pairs"].push_back({{"lower", to_string(sm.refined.cell_polytope(a))},
                            {"upper", to_string(sm.refined.cell_polytope(b))},
                            {"label", to_string(cell_label(sm.refined, b))}});
    j["critical_cells"] = static_cast<long>(sm.critical.size());
    j["morse_f_vector"] = mc.f;
    j["verified_against_input"] = true;
    os << j.dump(2) << "\n";
  } else {
    os << "refined f-vector: " << join_longs(f_vector(sm.refined)) << "\n";
    os << "matching pairs: " << pairs.size() << "\n";
    for (auto [a, b] : pairs)
      os << "  " << to_string(sm.refined.cell_polytope(a)) << " <-> "
         << to_string(sm.refined.cell_polytope(b)) << " label "
         << to_string(cell_label(sm.refined, b)) << "\n";
    os << "critical cells: " << sm.critical.size() << "\n";
    os << "morse f-vector: " << join_longs(mc.f) << "\n";
    os << "boundary checked against the input complex: yes\n";
  }
  return 0;
}

int cmd_resolve(const RunConfig& cfg, const FieldSpec& field, std::ostream& os) {
  Polytope p = load_polytope(cfg.input);
  auto d = is_diced(p);
  if (!d.diced) return report_not_diced(cfg, d, os);
  MonomialIdeal ideal = ideal_of_polytope(p);
  PolyComplex x = make_complex({p});
  label_by_coordinates(x);
  SubdivisionMatching sm;
  try {
    sm = subdivision_matching(x, cfg.strict_reverify);
  } catch (const std::invalid_argument& e) {
    return report_hypothesis_failure(cfg, e.what(), os);
  }
  morse_complex(sm.refined, sm.matching, &x);

  auto refined_check = verify_cellular_resolution(sm.refined, ideal, field);
  auto check = verify_cellular_resolution(x, ideal, field);
  auto min = is_minimal(x);
  BettiTable bt;
  BettiTable oracle = koszul_betti_oracle(ideal, field);
  bool agree = false;
  if (min.minimal) {
    bt = betti_table(x);
    agree = (bt == oracle);
  }
  bool pass = refined_check.resolves && check.resolves && min.minimal && agree;

  if (cfg.format == "json") {
    json j;
    j["command"] = "resolve";
    j["field"] = to_string(field);
    j["generators"] = json::array();
    for (const auto& g : ideal.generators) j["generators"].push_back(to_string(g));
    j["refined_resolves"] = refined_check.resolves;
    j["resolves"] = check.resolves;
    if (!check.resolves) {
      j["failures"] = json::array();
      for (const auto& fail : check.failures)
        j["failures"].push_back(
            {{"degree", to_string(fail.degree)}, {"homology", fail.homology.dims}});
    }
    j["minimal"] = min.minimal;
    if (min.minimal) {
      j["betti"] = betti_json(bt);
      j["totals"] = bt.totals();
      j["oracle_agrees"] = agree;
    }
    os << j.dump(2) << "\n";
  } else {
    os << "ideal:";
    for (size_t i = 0; i < ideal.generators.size(); ++i)
      os << (i ? ", " : " ") << to_string(ideal.generators[i]);
    os << "\n";
    os << "refined complex resolves the ideal: " << yesno(refined_check.resolves) << "\n";
    print_failures(os, refined_check.failures);
    os << "input complex resolves the ideal: " << yesno(check.resolves) << "\n";
    print_failures(os, check.failures);
    os << "input complex minimal: " << yesno(min.minimal) << "\n";
    for (auto [a, b] : min.witnesses)
      os << "  equal labels: " << to_string(x.cell_polytope(a)) << " inside "
         << to_string(x.cell_polytope(b)) << "\n";
    if (min.minimal) {
      os << "betti:\n";
      print_betti(os, bt, "  ");
      os << "totals: " << join_longs(bt.totals()) << "\n";
      os << "oracle agrees: " << yesno(agree) << "\n";
    }
  }
  return pass ? 0 : 1;
}

int cmd_oracle(const RunConfig& cfg, const FieldSpec& field, std::ostream& os) {
  MonomialIdeal ideal = load_ideal(cfg.input);
  BettiTable t = koszul_betti_oracle(ideal, field);
  if (cfg.format == "json") {
    json j;
    j["command"] = "oracle";
    j["field"] = to_string(field);
    j["generators"] = json::array();
    for (const auto& g : ideal.generators) j["generators"].push_back(to_string(g));
    j["betti"] = betti_json(t);
    j["totals"] = t.totals();
    os << j.dump(2) << "\n";
  } else {
    os << "ideal:";
    for (size_t i = 0; i < ideal.generators.size(); ++i)
      os << (i ? ", " : " ") << to_string(ideal.generators[i]);
    os << "\n";
    print_betti(os, t, "");
    os << "totals: " << join_longs(t.totals()) << "\n";
  }
  return 0;
}

int cmd_verify_fine_mixed(const RunConfig& cfg, const FieldSpec& field, std::ostream& os) {
  MixedSubdivision s = load_mixed(cfg.input);
  auto valid = validate_mixed_subdivision(s);
  auto emit_early = [&](const SubdivisionReport& rep, const char* stage_text,
                        const char* stage_json) {
    if (cfg.format == "json") {
      json j;
      j["command"] = "verify-fine-mixed";
      j[stage_json] = false;
      j["violations"] = rep.violations;
      os << j.dump(2) << "\n";
    } else {
      os << stage_text << ": no\n";
      for (const auto& v : rep.violations) os << "  " << v << "\n";
    }
    return 1;
  };
  if (!valid.ok) return emit_early(valid, "structure valid", "valid");
  auto hyp = verify_sharpness_hypotheses(s);
  if (!hyp.ok) {
    if (cfg.format != "json") os << "structure valid: yes\n";
    return emit_early(hyp, "hypotheses hold", "hypotheses");
  }
  auto res = resolve_mixed_subdivision(s, field);
  bool pass = res.resolves && res.minimal && res.oracle_agrees;

  if (cfg.format == "json") {
    json j;
    j["command"] = "verify-fine-mixed";
    j["valid"] = true;
    j["hypotheses"] = true;
    j["cells"] = static_cast<long>(s.cells.size());
    j["resolves"] = res.resolves;
    j["minimal"] = res.minimal;
    if (res.minimal) {
      j["betti"] = betti_json(res.betti);
      j["totals"] = res.betti.totals();
      j["oracle_agrees"] = res.oracle_agrees;
    }
    os << j.dump(2) << "\n";
  } else {
    os << "structure valid: yes\n";
    os << "hypotheses hold: yes\n";
    os << "cells: " << s.cells.size() << "\n";
    os << "resolves: " << yesno(res.resolves) << "\n";
    print_failures(os, res.failures);
    os << "minimal: " << yesno(res.minimal) << "\n";
    for (auto [a, b] : res.equal_label_pairs)
      os << "  equal labels: " << to_string(res.complex.cell_polytope(a)) << " inside "
         << to_string(res.complex.cell_polytope(b)) << "\n";
    if (res.minimal) {
      os << "betti:\n";
      print_betti(os, res.betti, "  ");
      os << "totals: " << join_longs(res.betti.totals()) << "\n";
      os << "oracle agrees: " << yesno(res.oracle_agrees) << "\n";
    }
  }
  return pass ? 0 : 1;
}

int cmd_export(const RunConfig& cfg, std::ostream& os) {
  Polytope p = load_polytope(cfg.input);
  PolyComplex x = grid_subdivision(p);
  if (is_diced(x).diced) label_by_coordinates(x);
  int dim = affine_dim(p);
  std::string fmt = cfg.format;
  if (fmt == "text") fmt = dim <= 2 ? "svg" : "off";
  if (fmt == "svg") {
    if (dim > 2)
      throw CliError("svg export needs dimension at most 2, input has dimension " +
                     std::to_string(dim));
    os << svg_export(x);
  } else if (fmt == "off") {
    if (dim != 3)
      throw CliError("off export needs a 3-dimensional polytope, input has dimension " +
                     std::to_string(dim));
    os << off_export(x);
  } else {
    throw CliError("export writes svg or off, not " + fmt);
  }
  return 0;
}

}  // namespace

Polytope parse_polytope_file(const std::string& path) {
  return polytope_from_json(read_json(path), path);
}

MonomialIdeal parse_ideal_file(const std::string& path) {
  return ideal_from_json(read_json(path), path);
}

MixedSubdivision parse_mixed_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw CliError("cannot open " + path);
  MixedSubdivision s;
  bool have_summands = false;
  std::string line;
  int lineno = 0;
  auto fail = [&](const std::string& msg) -> void {
    throw CliError(path + ":" + std::to_string(lineno) + ": " + msg);
  };
  auto parse_groups = [&](const std::string& rest) {
    std::vector<SimplexSpec> specs;
    size_t i = 0;
    while (i < rest.size()) {
      if (std::isspace(static_cast<unsigned char>(rest[i]))) {
        ++i;
        continue;
      }
      if (rest[i] != '{') fail(std::string("expected '{', got '") + rest[i] + "'");
      size_t close = rest.find('}', i);
      if (close == std::string::npos) fail("unmatched '{'");
      std::vector<int> idx;
      std::string tok;
      auto flush = [&]() {
        if (!tok.empty()) {
          idx.push_back(std::stoi(tok));
          tok.clear();
        }
      };
      for (size_t k = i + 1; k < close; ++k) {
        char ch = rest[k];
        if (std::isdigit(static_cast<unsigned char>(ch)))
          tok += ch;
        else if (ch == ',' || std::isspace(static_cast<unsigned char>(ch)))
          flush();
        else
          fail(std::string("unexpected character '") + ch + "' in an index set");
      }
      flush();
      if (idx.empty()) fail("empty index set");
      std::sort(idx.begin(), idx.end());
      if (std::adjacent_find(idx.begin(), idx.end()) != idx.end()) fail("repeated index");
      specs.push_back(SimplexSpec{std::move(idx)});
      i = close + 1;
    }
    if (specs.empty()) fail("no index sets");
    return specs;
  };
  while (std::getline(in, line)) {
    ++lineno;
    if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    size_t begin = line.find_first_not_of(" \t\r");
    if (begin == std::string::npos) continue;
    size_t end = line.find_first_of(" \t", begin);
    std::string word = line.substr(begin, end == std::string::npos ? end : end - begin);
    std::string rest = end == std::string::npos ? "" : line.substr(end);
    if (word == "summands") {
      if (have_summands) fail("duplicate summands line");
      s.summands = parse_groups(rest);
      have_summands = true;
    } else if (word == "cell") {
      if (!have_summands) fail("cell line before the summands line");
      s.cells.push_back(MixedCellSpec{parse_groups(rest)});
    } else {
      fail("expected 'summands' or 'cell', got '" + word + "'");
    }
  }
  if (!have_summands) throw CliError(path + ": missing summands line");
  if (s.cells.empty()) throw CliError(path + ": no cell lines");
  return s;
}

int run(const RunConfig& config, std::ostream& out, std::ostream& err) {
  try {
    FieldSpec field;
    try {
      field = parse_field(config.field);
    } catch (const std::exception& e) {
      throw CliError(std::string("bad --field: ") + e.what());
    }
    const bool figure = config.format == "svg" || config.format == "off";
    if (config.format != "text" && config.format != "json" && !figure)
      throw CliError("unknown --format: " + config.format);
    if (figure && config.command != "export")
      throw CliError("--format " + config.format + " is only for export");

    std::ofstream file;
    std::ostream* sink = &out;
    if (!config.out.empty()) {
      file.open(config.out);
      if (!file) throw CliError("cannot open output file " + config.out);
      sink = &file;
    }

    if (config.command == "diced") return cmd_diced(config, *sink);
    if (config.command == "sharp") return cmd_sharp(config, *sink);
    if (config.command == "subdivide") return cmd_subdivide(config, *sink);
    if (config.command == "morse") return cmd_morse(config, *sink);
    if (config.command == "resolve") return cmd_resolve(config, field, *sink);
    if (config.command == "oracle") return cmd_oracle(config, field, *sink);
    if (config.command == "verify-fine-mixed") return cmd_verify_fine_mixed(config, field, *sink);
    if (config.command == "export") return cmd_export(config, *sink);
    throw CliError("unknown command: " + config.command);
  } catch (const CliError& e) {
    err << "error: " << e.what() << "\n";
    return e.code;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  }
}

}  // namespace dicer
