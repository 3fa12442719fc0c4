#include "airybvp/config.hpp"

#include <algorithm>
#include <bit>
#include <charconv>
#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

namespace airy {

namespace {

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

const std::map<std::string, std::set<std::string>>& schema() {
  static const std::map<std::string, std::set<std::string>> s{
      {"problem", {"bc.family", "bc.theta", "bc.gamma", "bc.beta0", "bc.beta1", "bc.beta2", "bc.b1", "bc.b2",
                   "bc.wellposed"}},
      {"datum", {"datum.kind", "datum.mode", "datum.lo", "datum.hi", "datum.center", "datum.width", "datum.path",
                 "datum.regularity"}},
      {"numerics", {"numerics.N", "numerics.P", "numerics.dt", "numerics.T", "numerics.degree", "numerics.substeps",
                    "numerics.reference", "numerics.cesaro"}},
      {"analysis", {"analysis.q_max", "analysis.decay_lo", "analysis.decay_hi", "analysis.jump_points", "analysis.jump_merge",
                    "analysis.jump_window", "analysis.jump_factor", "analysis.jump_floor"}},
  };
  return s;
}

class Reader {
 public:
  explicit Reader(const IniDocument& doc) : doc_(doc) {}

  const IniDocument::Entry* entry(const std::string& section, const std::string& key) const {
    return doc_.find(section, key);
  }

  template <class T, class Parse>
  T get(const std::string& section, const std::string& key, T fallback, Parse parse) const {
    const auto* e = doc_.find(section, key);
    if (!e) return fallback;
    try {
      return parse(e->value);
    } catch (const ConfigError&) {
      throw;
    } catch (const std::exception& ex) {
      throw ConfigError(e->line, key + ": " + ex.what());
    }
  }

  double real(const std::string& s, const std::string& k, double fb) const { return get(s, k, fb, parse_double); }
  Complex complex(const std::string& s, const std::string& k, Complex fb) const {
    return get(s, k, fb, parse_complex);
  }
  int integer(const std::string& s, const std::string& k, int fb) const {
    return get(s, k, fb, [](const std::string& v) {
      int out = 0;
      auto [p, ec] = std::from_chars(v.data(), v.data() + v.size(), out);
      if (ec != std::errc() || p != v.data() + v.size()) throw std::invalid_argument("expected an integer, got '" + v + "'");
      return out;
    });
  }
  bool boolean(const std::string& s, const std::string& k, bool fb) const {
    return get(s, k, fb, [](const std::string& v) {
      if (v == "true" || v == "yes" || v == "1") return true;
      if (v == "false" || v == "no" || v == "0") return false;
      throw std::invalid_argument("expected true or false, got '" + v + "'");
    });
  }
  std::string text(const std::string& s, const std::string& k, std::string fb) const {
    return get(s, k, fb, [](const std::string& v) { return v; });
  }
  int line(const std::string& s, const std::string& k) const {
    const auto* e = doc_.find(s, k);
    return e ? e->line : doc_.section_line(s);
  }

 private:
  const IniDocument& doc_;
};

Regularity parse_regularity(const std::string& v) {
  for (auto r : {Regularity::SmoothPeriodic, Regularity::SmoothNonmatching, Regularity::BoundedVariation})
    if (v == to_string(r)) return r;
  throw std::invalid_argument("unknown regularity '" + v + "'");
}

}  // namespace

// ---------------------------------------------------------------------------

IniDocument IniDocument::parse(std::istream& in) {
  IniDocument doc;
  std::string raw, section;
  int line = 0;
  while (std::getline(in, raw)) {
    ++line;
    const std::string s = trim(raw);
    if (s.empty() || s[0] == '#' || s[0] == ';') continue;
    if (s.front() == '[') {
      if (s.back() != ']') throw ConfigError(line, "malformed section header");
      section = trim(s.substr(1, s.size() - 2));
      if (section.empty()) throw ConfigError(line, "empty section name");
      if (doc.sections_.count(section)) throw ConfigError(line, "duplicate section [" + section + "]");
      doc.sections_[section];
      doc.section_lines_[section] = line;
      doc.order_.push_back(section);
      continue;
    }
    const auto eq = s.find('=');
    if (eq == std::string::npos) throw ConfigError(line, "expected key = value");
    if (section.empty()) throw ConfigError(line, "key outside of any section");
    const std::string key = trim(s.substr(0, eq));
    std::string value = trim(s.substr(eq + 1));
    if (const auto hash = value.find(" #"); hash != std::string::npos) value = trim(value.substr(0, hash));
    if (key.empty()) throw ConfigError(line, "empty key");
    auto& sec = doc.sections_[section];
    if (sec.count(key)) throw ConfigError(line, "duplicate key '" + key + "'");
    sec[key] = {value, line};
  }
  return doc;
}

IniDocument IniDocument::parse(const std::string& text) {
  std::istringstream in(text);
  return parse(in);
}

IniDocument IniDocument::load(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError(0, "cannot open " + path.string());
  return parse(in);
}

void IniDocument::set(const std::string& section, const std::string& key, const std::string& value) {
  if (!sections_.count(section)) order_.push_back(section);
  sections_[section][key] = {value, 0};
}

const IniDocument::Entry* IniDocument::find(const std::string& section, const std::string& key) const {
  const auto s = sections_.find(section);
  if (s == sections_.end()) return nullptr;
  const auto k = s->second.find(key);
  return k == s->second.end() ? nullptr : &k->second;
}

int IniDocument::section_line(const std::string& section) const {
  const auto it = section_lines_.find(section);
  return it == section_lines_.end() ? 0 : it->second;
}

std::string IniDocument::serialize() const {
  std::ostringstream out;
  bool first = true;
  for (const auto& name : order_) {
    if (!first) out << '\n';
    first = false;
    out << '[' << name << "]\n";
    for (const auto& [k, e] : sections_.at(name)) out << k << " = " << e.value << '\n';
  }
  return out.str();
}

// ---------------------------------------------------------------------------

std::string format_double(double v) {
  char buf[64];
  auto [p, ec] = std::to_chars(buf, buf + sizeof buf, v);
  (void)ec;
  return {buf, p};
}

double parse_double(const std::string& text) {
  const std::string s = trim(text);
  double v = 0.0;
  const char* b = s.data();
  if (!s.empty() && s[0] == '+') ++b;
  auto [p, ec] = std::from_chars(b, s.data() + s.size(), v);
  if (ec != std::errc() || p != s.data() + s.size() || s.empty())
    throw std::invalid_argument("expected a number, got '" + text + "'");
  if (!std::isfinite(v)) throw std::invalid_argument("value must be finite");
  return v;
}

std::string format_complex(Complex z) {
  if (z.imag() == 0.0 && !std::signbit(z.imag())) return format_double(z.real());
  return format_double(z.real()) + "," + format_double(z.imag());
}

Complex parse_complex(const std::string& text) {
  const auto comma = text.find(',');
  if (comma == std::string::npos) return {parse_double(text), 0.0};
  return {parse_double(text.substr(0, comma)), parse_double(text.substr(comma + 1))};
}

// ---------------------------------------------------------------------------

const std::vector<CatalogEntry>& family_catalog() {
  static const std::vector<CatalogEntry> c{
      {"periodic", "u and derivatives agree at both ends; u = v, w = 0", {}},
      {"dirichlet", "u(0) = u(1) = u_x(1) = 0", {}},
      {"mixed", "u(0) = u(1) = 0, u_x(0) = gamma u_x(1)", {{"bc.gamma", "2"}}},
      {"pseudo_periodic",
       "beta_j d^j u(0) = d^j u(1), j = 0,1,2",
       {{"bc.beta0", "2"}, {"bc.beta1", "1"}, {"bc.beta2", "0.5"}}},
      {"quasi_periodic", "d^j u(0) = e^{i theta} d^j u(1), j = 0,1,2", {{"bc.theta", "1"}}},
      {"quasi_coupled",
       "u(0) = e^{i theta} u(1), u_x(0) = b1 e^{i theta} u_x(1), u_xx(0) = b2 e^{i theta} u_xx(1)",
       {{"bc.theta", "1.0471975511965976"}, {"bc.b1", "2"}, {"bc.b2", "1"}}},
  };
  return c;
}

const std::vector<std::string>& datum_kinds() {
  static const std::vector<std::string> k{"fourier_mode", "step", "bump", "poly", "samples_file"};
  return k;
}

BoundarySpec parse_boundary(const IniDocument& doc) {
  Reader r(doc);
  const auto* fam = doc.find("problem", "bc.family");
  if (!fam) throw ConfigError(doc.section_line("problem"), "missing key bc.family in [problem]");
  const std::string name = fam->value;
  const bool wellposed = r.boolean("problem", "bc.wellposed", true);
  // keys that do not belong to the family are rejected
  const auto cat = std::find_if(family_catalog().begin(), family_catalog().end(),
                                [&](const CatalogEntry& e) { return e.family == name; });
  if (cat == family_catalog().end()) throw ConfigError(fam->line, "unknown bc.family '" + name + "'");
  if (const auto* sec = doc.sections().count("problem") ? &doc.sections().at("problem") : nullptr) {
    for (const auto& [key, e] : *sec) {
      if (key == "bc.family" || key == "bc.wellposed") continue;
      const bool ok = std::any_of(cat->keys.begin(), cat->keys.end(), [&](const auto& kv) { return kv.first == key; });
      if (!ok) throw ConfigError(e.line, "key " + key + " does not apply to bc.family = " + name);
    }
  }
  try {
    if (name == "periodic") return BoundarySpec(Periodic{}, wellposed);
    if (name == "dirichlet") return BoundarySpec(DirichletType{}, wellposed);
    if (name == "mixed") return BoundarySpec(MixedDirichlet{r.real("problem", "bc.gamma", 2.0)}, wellposed);
    if (name == "pseudo_periodic") {
      PseudoPeriodic p;
      for (int j = 0; j < 3; ++j) p.beta[j] = r.complex("problem", "bc.beta" + std::to_string(j), 1.0);
      return BoundarySpec(p, wellposed);
    }
    if (name == "quasi_periodic") return BoundarySpec(QuasiPeriodic{r.real("problem", "bc.theta", 0.0)}, wellposed);
    QuasiCoupled q;
    q.theta = r.real("problem", "bc.theta", 0.0);
    q.b1 = r.complex("problem", "bc.b1", q.b1);
    q.b2 = r.complex("problem", "bc.b2", q.b2);
    return BoundarySpec(q, wellposed);
  } catch (const ConfigError&) {
    throw;
  } catch (const Error& e) {
    throw ConfigError(fam->line, e.what());
  }
}

void write_boundary(const BoundarySpec& bc, IniDocument& doc) {
  doc.set("problem", "bc.family", bc.name());
  doc.set("problem", "bc.wellposed", bc.wellposedness_assumed() ? "true" : "false");
  if (auto* m = bc.get<MixedDirichlet>()) doc.set("problem", "bc.gamma", format_double(m->gamma));
  if (auto* p = bc.get<PseudoPeriodic>())
    for (int j = 0; j < 3; ++j) doc.set("problem", "bc.beta" + std::to_string(j), format_complex(p->beta[j]));
  if (auto* q = bc.get<QuasiPeriodic>()) doc.set("problem", "bc.theta", format_double(q->theta));
  if (auto* q = bc.get<QuasiCoupled>()) {
    doc.set("problem", "bc.theta", format_double(q->theta));
    doc.set("problem", "bc.b1", format_complex(q->b1));
    doc.set("problem", "bc.b2", format_complex(q->b2));
  }
}

ScenarioConfig parse_scenario(const IniDocument& doc) {
  for (const auto& [section, entries] : doc.sections()) {
    const auto s = schema().find(section);
    if (s == schema().end()) throw ConfigError(doc.section_line(section), "unknown section [" + section + "]");
    for (const auto& [key, e] : entries)
      if (!s->second.count(key)) throw ConfigError(e.line, "unknown key '" + key + "' in [" + section + "]");
  }
  Reader r(doc);
  ScenarioConfig cfg;
  cfg.bc = parse_boundary(doc);

  auto& d = cfg.datum;
  d.kind = r.text("datum", "datum.kind", d.kind);
  if (std::find(datum_kinds().begin(), datum_kinds().end(), d.kind) == datum_kinds().end())
    throw ConfigError(r.line("datum", "datum.kind"), "unknown datum.kind '" + d.kind + "'");
  d.mode = r.integer("datum", "datum.mode", d.mode);
  d.lo = r.real("datum", "datum.lo", d.lo);
  d.hi = r.real("datum", "datum.hi", d.hi);
  d.center = r.real("datum", "datum.center", d.center);
  d.width = r.real("datum", "datum.width", d.width);
  d.path = r.text("datum", "datum.path", d.path);
  if (doc.find("datum", "datum.regularity"))
    d.regularity = r.get("datum", "datum.regularity", Regularity::BoundedVariation, parse_regularity);
  if (d.kind == "samples_file" && d.path.empty())
    throw ConfigError(r.line("datum", "datum.kind"), "datum.kind = samples_file needs datum.path");
  if (d.kind == "step" && !(d.lo >= 0.0 && d.lo < d.hi && d.hi <= 1.0))
    throw ConfigError(r.line("datum", "datum.hi"), "step needs 0 <= datum.lo < datum.hi <= 1");
  if (d.kind == "bump" && !(d.width > 0.0 && d.center - d.width >= 0.0 && d.center + d.width <= 1.0))
    throw ConfigError(r.line("datum", "datum.width"), "bump support [center - width, center + width] must lie in [0,1]");

  auto& n = cfg.numerics;
  n.N = r.integer("numerics", "numerics.N", n.N);
  n.P = r.integer("numerics", "numerics.P", n.P);
  n.dt = r.real("numerics", "numerics.dt", n.dt);
  n.T = r.real("numerics", "numerics.T", n.T);
  n.degree = r.integer("numerics", "numerics.degree", n.degree);
  n.substeps = r.integer("numerics", "numerics.substeps", n.substeps);
  n.reference = r.boolean("numerics", "numerics.reference", n.reference);
  n.cesaro = r.boolean("numerics", "numerics.cesaro", n.cesaro);
  if (n.N < 1) throw ConfigError(r.line("numerics", "numerics.N"), "numerics.N must be positive");
  if (n.P < 64) throw ConfigError(r.line("numerics", "numerics.P"), "numerics.P must be at least 64");
  if (!(n.dt > 0.0)) throw ConfigError(r.line("numerics", "numerics.dt"), "numerics.dt must be positive");
  if (!(n.T > 0.0)) throw ConfigError(r.line("numerics", "numerics.T"), "numerics.T must be positive");
  const double steps = n.T / n.dt;
  if (std::abs(steps - std::round(steps)) > 1e-9 * steps)
    throw ConfigError(r.line("numerics", "numerics.dt"), "numerics.T must be an integer multiple of numerics.dt");
  if (n.degree < 16) throw ConfigError(r.line("numerics", "numerics.degree"), "numerics.degree must be at least 16");
  if (n.substeps < 1) throw ConfigError(r.line("numerics", "numerics.substeps"), "numerics.substeps must be positive");
  const bool needs_reference = cfg.bc.get<DirichletType>() || cfg.bc.get<MixedDirichlet>() ||
                               cfg.bc.get<PseudoPeriodic>() || cfg.bc.get<QuasiCoupled>();
  if (n.reference && n.dt / n.substeps > n.T / 100.0 * (1.0 + 1e-12))
    throw ConfigError(r.line("numerics", "numerics.dt"),
                      "the reference solver needs numerics.dt / numerics.substeps <= numerics.T / 100");
  if (needs_reference && !n.reference)
    throw ConfigError(r.line("numerics", "numerics.reference"),
                      "bc.family = " + cfg.bc.name() + " needs boundary traces from the reference solver");

  auto& a = cfg.analysis;
  a.q_max = r.integer("analysis", "analysis.q_max", a.q_max);
  a.decay_lo = r.integer("analysis", "analysis.decay_lo", a.decay_lo);
  a.decay_hi = r.integer("analysis", "analysis.decay_hi", a.decay_hi);
  a.jump_points = r.integer("analysis", "analysis.jump_points", a.jump_points);
  a.jump_window = r.integer("analysis", "analysis.jump_window", a.jump_window);
  a.jump_factor = r.real("analysis", "analysis.jump_factor", a.jump_factor);
  a.jump_floor = r.real("analysis", "analysis.jump_floor", a.jump_floor);
  a.jump_merge = r.integer("analysis", "analysis.jump_merge", a.jump_merge);
  if (a.q_max < 1) throw ConfigError(r.line("analysis", "analysis.q_max"), "analysis.q_max must be positive");
  if (a.decay_lo < 1) throw ConfigError(r.line("analysis", "analysis.decay_lo"), "analysis.decay_lo must be positive");
  const int hi = a.decay_hi == 0 ? n.N : a.decay_hi;
  if (hi > n.N || hi < a.decay_lo + 8)
    throw ConfigError(r.line("analysis", "analysis.decay_hi"), "decay fit range must satisfy decay_lo + 8 <= decay_hi <= N");
  if (a.jump_points != 0 && a.jump_points < 64)
    throw ConfigError(r.line("analysis", "analysis.jump_points"), "analysis.jump_points must be at least 64");
  if (a.jump_merge < 0) throw ConfigError(r.line("analysis", "analysis.jump_merge"), "analysis.jump_merge must be non-negative");
  if (a.jump_window < 1) throw ConfigError(r.line("analysis", "analysis.jump_window"), "analysis.jump_window must be positive");
  return cfg;
}

IniDocument to_ini(const ScenarioConfig& cfg) {
  IniDocument doc;
  write_boundary(cfg.bc, doc);
  const auto& d = cfg.datum;
  doc.set("datum", "datum.kind", d.kind);
  if (d.kind == "fourier_mode") doc.set("datum", "datum.mode", std::to_string(d.mode));
  if (d.kind == "step") {
    doc.set("datum", "datum.lo", format_double(d.lo));
    doc.set("datum", "datum.hi", format_double(d.hi));
  }
  if (d.kind == "bump") {
    doc.set("datum", "datum.center", format_double(d.center));
    doc.set("datum", "datum.width", format_double(d.width));
  }
  if (d.kind == "samples_file") doc.set("datum", "datum.path", d.path);
  if (d.regularity) doc.set("datum", "datum.regularity", to_string(*d.regularity));
  const auto& n = cfg.numerics;
  doc.set("numerics", "numerics.N", std::to_string(n.N));
  doc.set("numerics", "numerics.P", std::to_string(n.P));
  doc.set("numerics", "numerics.dt", format_double(n.dt));
  doc.set("numerics", "numerics.T", format_double(n.T));
  doc.set("numerics", "numerics.degree", std::to_string(n.degree));
  doc.set("numerics", "numerics.substeps", std::to_string(n.substeps));
  doc.set("numerics", "numerics.reference", n.reference ? "true" : "false");
  doc.set("numerics", "numerics.cesaro", n.cesaro ? "true" : "false");
  const auto& a = cfg.analysis;
  doc.set("analysis", "analysis.q_max", std::to_string(a.q_max));
  doc.set("analysis", "analysis.decay_lo", std::to_string(a.decay_lo));
  doc.set("analysis", "analysis.decay_hi", std::to_string(a.decay_hi));
  doc.set("analysis", "analysis.jump_points", std::to_string(a.jump_points));
  doc.set("analysis", "analysis.jump_window", std::to_string(a.jump_window));
  doc.set("analysis", "analysis.jump_factor", format_double(a.jump_factor));
  doc.set("analysis", "analysis.jump_floor", format_double(a.jump_floor));
  doc.set("analysis", "analysis.jump_merge", std::to_string(a.jump_merge));
  return doc;
}

InitialDatum make_datum(const DatumConfig& d, const std::filesystem::path& base_dir) {
  InitialDatum f;
  if (d.kind == "fourier_mode") f = datum::fourier_mode(d.mode);
  else if (d.kind == "step") f = datum::step(d.lo, d.hi);
  else if (d.kind == "bump") f = datum::bump(d.center, d.width);
  else if (d.kind == "poly") f = datum::poly();
  else if (d.kind == "samples_file") {
    const auto path = std::filesystem::path(d.path).is_absolute() ? std::filesystem::path(d.path) : base_dir / d.path;
    std::ifstream in(path);
    if (!in) throw ConfigError(0, "cannot open samples file " + path.string());
    std::vector<Complex> samples;
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
      ++lineno;
      const std::string s = trim(line);
      if (s.empty() || s[0] == '#') continue;
      std::istringstream ls(s);
      std::string re, im;
      ls >> re >> im;
      try {
        samples.emplace_back(parse_double(re), im.empty() ? 0.0 : parse_double(im));
      } catch (const std::exception& e) {
        throw ConfigError(0, path.string() + ":" + std::to_string(lineno) + ": " + e.what());
      }
    }
    if (samples.empty() || !std::has_single_bit(samples.size()))
      throw ConfigError(0, "samples file must hold a power-of-two number of samples, got " +
                               std::to_string(samples.size()));
    return InitialDatum::sampled(std::move(samples), d.regularity.value_or(Regularity::BoundedVariation));
  } else {
    throw ConfigError(0, "unknown datum.kind '" + d.kind + "'");
  }
  if (d.regularity)
    return InitialDatum::closed_form(f.function(), *d.regularity, f.breakpoints(), f.real_valued());
  return f;
}

}  // namespace airy
