#include "fracrd/config.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <fstream>
#include <limits>
#include <sstream>

namespace fracrd {

namespace {

std::string trim(const std::string& s) {
  std::size_t b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return "";
  std::size_t e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

std::string lower(std::string s) {
  std::transform(s.begin(), s.end(), s.begin(),
                 [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  return s;
}

std::vector<std::string> split_ws(const std::string& s) {
  std::vector<std::string> out;
  std::istringstream in(s);
  std::string tok;
  while (in >> tok) out.push_back(tok);
  return out;
}

struct RawEntry {
  std::string key;    // includes section prefix "species.N." when applicable
  std::string value;
  int line;
};

// Collects every problem; reported all at once through ConfigError.
struct Issues {
  std::vector<std::string> list;
  void add(int line, const std::string& msg) {
    list.push_back(line > 0 ? "line " + std::to_string(line) + ": " + msg : msg);
  }
  bool empty() const { return list.empty(); }
};

class EntryReader {
 public:
  EntryReader(std::vector<RawEntry> entries, Issues& issues)
      : entries_(std::move(entries)), issues_(issues) {}

  bool has(const std::string& key) const {
    return std::any_of(entries_.begin(), entries_.end(),
                       [&](const RawEntry& e) { return e.key == key; });
  }

  const RawEntry* find(const std::string& key) {
    const RawEntry* found = nullptr;
    for (const RawEntry& e : entries_) {
      if (e.key != key) continue;
      if (found) issues_.add(e.line, "duplicate key '" + key + "'");
      found = &e;
      used_.push_back(&e);
    }
    return found;
  }

  std::optional<double> real(const std::string& key) {
    const RawEntry* e = find(key);
    if (!e) return std::nullopt;
    try {
      std::size_t pos = 0;
      double v = std::stod(e->value, &pos);
      if (pos != e->value.size()) throw std::invalid_argument("");
      return v;
    } catch (...) {
      issues_.add(e->line, "key '" + key + "': expected a real number, got '" +
                               e->value + "'");
      return std::nullopt;
    }
  }

  std::optional<std::vector<double>> reals(const std::string& key) {
    const RawEntry* e = find(key);
    if (!e) return std::nullopt;
    std::vector<double> out;
    for (const std::string& tok : split_ws(e->value)) {
      try {
        std::size_t pos = 0;
        out.push_back(std::stod(tok, &pos));
        if (pos != tok.size()) throw std::invalid_argument("");
      } catch (...) {
        issues_.add(e->line, "key '" + key + "': expected real numbers, got '" +
                                 e->value + "'");
        return std::nullopt;
      }
    }
    return out;
  }

  std::optional<std::uint64_t> integer(const std::string& key) {
    const RawEntry* e = find(key);
    if (!e) return std::nullopt;
    try {
      std::size_t pos = 0;
      long long v = std::stoll(e->value, &pos);
      if (pos != e->value.size() || v < 0) throw std::invalid_argument("");
      return static_cast<std::uint64_t>(v);
    } catch (...) {
      issues_.add(e->line, "key '" + key + "': expected a nonnegative integer, got '" +
                               e->value + "'");
      return std::nullopt;
    }
  }

  std::optional<std::vector<std::size_t>> integers(const std::string& key) {
    const RawEntry* e = find(key);
    if (!e) return std::nullopt;
    std::vector<std::size_t> out;
    for (const std::string& tok : split_ws(e->value)) {
      try {
        std::size_t pos = 0;
        long long v = std::stoll(tok, &pos);
        if (pos != tok.size() || v < 0) throw std::invalid_argument("");
        out.push_back(static_cast<std::size_t>(v));
      } catch (...) {
        issues_.add(e->line, "key '" + key + "': expected nonnegative integers, got '" +
                                 e->value + "'");
        return std::nullopt;
      }
    }
    return out;
  }

  std::optional<std::string> text(const std::string& key) {
    const RawEntry* e = find(key);
    if (!e) return std::nullopt;
    return e->value;
  }

  // Anything never requested by find() is an unknown key.
  void reject_unused() {
    for (const RawEntry& e : entries_) {
      if (std::find(used_.begin(), used_.end(), &e) == used_.end())
        issues_.add(e.line, "unknown key '" + e.key + "'");
    }
  }

  int line_of(const std::string& key) const {
    for (const RawEntry& e : entries_)
      if (e.key == key) return e.line;
    return 0;
  }

 private:
  std::vector<RawEntry> entries_;
  Issues& issues_;
  std::vector<const RawEntry*> used_;
};

std::vector<RawEntry> tokenize(const std::string& text, Issues& issues) {
  std::vector<RawEntry> entries;
  std::istringstream in(text);
  std::string raw;
  std::string section;
  int line = 0;
  while (std::getline(in, raw)) {
    ++line;
    std::string s = raw;
    const std::size_t hash = s.find_first_of("#;");
    if (hash != std::string::npos) s = s.substr(0, hash);
    s = trim(s);
    if (s.empty()) continue;
    if (s.front() == '[') {
      if (s.back() != ']') {
        issues.add(line, "unterminated section header");
        continue;
      }
      const std::string name = lower(trim(s.substr(1, s.size() - 2)));
      if (name.rfind("species.", 0) != 0) {
        issues.add(line, "unknown section '" + name + "' (expected [species.N])");
        section.clear();
        continue;
      }
      section = name + ".";
      continue;
    }
    const std::size_t eq = s.find('=');
    if (eq == std::string::npos) {
      issues.add(line, "expected key = value, got '" + s + "'");
      continue;
    }
    const std::string key = lower(trim(s.substr(0, eq)));
    const std::string value = trim(s.substr(eq + 1));
    if (key.empty()) {
      issues.add(line, "empty key");
      continue;
    }
    entries.push_back(RawEntry{section + key, value, line});
  }
  return entries;
}

bool nearly_integer(double r) {
  // Within one unit in the last place of r.
  const double rounded = std::round(r);
  const double ulp = std::max(std::abs(r), 1.0) * std::numeric_limits<double>::epsilon();
  return std::abs(r - rounded) <= ulp && rounded >= 0.0;
}

}  // namespace

ConfigError::ConfigError(std::vector<std::string> issues_)
    : std::runtime_error([&issues_] {
        std::string msg = "invalid config:";
        for (const std::string& i : issues_) msg += "\n  " + i;
        return msg;
      }()),
      issues(std::move(issues_)) {}

std::string to_string(ModelKind m) {
  switch (m) {
    case ModelKind::None: return "none";
    case ModelKind::Fisher: return "fisher";
    case ModelKind::PredPrey: return "predprey";
  }
  return "?";
}

std::string to_string(IcKind ic) {
  switch (ic) {
    case IcKind::CondA: return "condA";
    case IcKind::CondB: return "condB";
    case IcKind::Constant: return "constant";
    case IcKind::Eigenfunction: return "eigenfunction";
    case IcKind::File: return "file";
  }
  return "?";
}

RunConfig parse_config(const std::string& text) {
  Issues issues;
  EntryReader reader(tokenize(text, issues), issues);
  RunConfig cfg;

  // Geometry.
  auto lo = reader.reals("lo");
  auto hi = reader.reals("hi");
  auto n = reader.integers("n");
  auto bc_tokens = reader.text("bc");
  if (!lo && !reader.has("lo")) issues.add(0, "missing required key 'lo'");
  if (!hi && !reader.has("hi")) issues.add(0, "missing required key 'hi'");
  if (!n && !reader.has("n")) issues.add(0, "missing required key 'n'");
  if (!bc_tokens && !reader.has("bc")) issues.add(0, "missing required key 'bc'");

  std::size_t dim = n ? n->size() : 0;
  if (n) {
    if (dim < 1 || dim > 3) issues.add(reader.line_of("n"), "n: dim must be 1, 2 or 3");
    for (std::size_t v : *n)
      if (v < 2) issues.add(reader.line_of("n"), "n: need at least 2 nodes per axis");
    cfg.n = *n;
  }
  if (lo && hi) {
    if (lo->size() != dim || hi->size() != dim) {
      issues.add(reader.line_of("lo"), "lo/hi: need one bound per axis");
    } else {
      cfg.domain.lo = *lo;
      cfg.domain.hi = *hi;
      for (std::size_t a = 0; a < dim; ++a)
        if (!(cfg.domain.hi[a] > cfg.domain.lo[a]))
          issues.add(reader.line_of("hi"),
                     "domain: hi must exceed lo on axis " + std::to_string(a));
    }
  }
  if (bc_tokens) {
    for (const std::string& tok : split_ws(*bc_tokens)) {
      const std::string t = lower(tok);
      if (t == "dirichlet")
        cfg.bc.push_back(BoundaryKind::Dirichlet);
      else if (t == "neumann")
        cfg.bc.push_back(BoundaryKind::Neumann);
      else
        issues.add(reader.line_of("bc"), "bc: expected dirichlet|neumann, got '" + tok + "'");
    }
    if (dim != 0 && cfg.bc.size() != dim)
      issues.add(reader.line_of("bc"), "bc: need one boundary kind per axis");
  }

  // Physics.
  if (auto alpha = reader.real("alpha")) {
    cfg.alpha = *alpha;
    if (!(cfg.alpha > 1.0) || !(cfg.alpha <= 2.0))
      issues.add(reader.line_of("alpha"), "alpha must satisfy 1 < alpha <= 2");
  } else if (!reader.has("alpha")) {
    issues.add(0, "missing required key 'alpha'");
  }
  if (auto d = reader.real("diffusion")) {
    cfg.diffusion = *d;
    if (!(cfg.diffusion > 0.0))
      issues.add(reader.line_of("diffusion"), "diffusion must be positive");
  }

  if (auto model = reader.text("model")) {
    const std::string m = lower(*model);
    if (m == "none")
      cfg.model = ModelKind::None;
    else if (m == "fisher")
      cfg.model = ModelKind::Fisher;
    else if (m == "predprey")
      cfg.model = ModelKind::PredPrey;
    else
      issues.add(reader.line_of("model"),
                 "model: expected none|fisher|predprey, got '" + *model + "'");
  } else if (!reader.has("model")) {
    issues.add(0, "missing required key 'model'");
  }

  if (auto v = reader.real("fisher.r")) cfg.fisher.r = *v;
  if (auto v = reader.real("fisher.k")) cfg.fisher.K = *v;
  if (auto v = reader.real("predprey.a")) cfg.predprey.a = *v;
  if (auto v = reader.real("predprey.b")) cfg.predprey.b = *v;
  if (auto v = reader.real("predprey.c")) cfg.predprey.c = *v;
  if (auto v = reader.real("predprey.delta")) cfg.predprey.delta = *v;
  if (cfg.model == ModelKind::Fisher && (!(cfg.fisher.r > 0.0) || !(cfg.fisher.K > 0.0)))
    issues.add(0, "fisher: r and K must be positive");
  if (cfg.model == ModelKind::PredPrey &&
      (!(cfg.predprey.a > 0.0) || !(cfg.predprey.b > 0.0) || !(cfg.predprey.c > 0.0) ||
       !(cfg.predprey.delta > 0.0)))
    issues.add(0, "predprey: a, b, c, delta must all be positive");

  // Time stepping.
  if (auto tau = reader.real("tau")) {
    cfg.tau = *tau;
    if (!(cfg.tau > 0.0)) issues.add(reader.line_of("tau"), "tau must be positive");
  } else if (!reader.has("tau")) {
    issues.add(0, "missing required key 'tau'");
  }
  if (auto tf = reader.real("t_final")) {
    cfg.t_final = *tf;
    if (cfg.t_final < 0.0) issues.add(reader.line_of("t_final"), "t_final must be >= 0");
  } else if (!reader.has("t_final")) {
    issues.add(0, "missing required key 't_final'");
  }
  if (cfg.tau > 0.0 && cfg.t_final > 0.0 && !nearly_integer(cfg.t_final / cfg.tau))
    issues.add(0, "t_final / tau = " + std::to_string(cfg.t_final / cfg.tau) +
                      " must be an integer step count");

  if (auto scheme = reader.text("scheme")) {
    const std::string s = lower(*scheme);
    if (s == "etd1")
      cfg.scheme = SchemeKind::Etd1;
    else if (s == "etdcn")
      cfg.scheme = SchemeKind::EtdCn;
    else if (s == "etdcn-exp")
      cfg.scheme = SchemeKind::EtdCnExp;
    else
      issues.add(reader.line_of("scheme"),
                 "scheme: expected etd1|etdcn|etdcn-exp, got '" + *scheme + "'");
  }

  // Initial condition.
  if (auto ic = reader.text("ic")) {
    const std::string i = lower(*ic);
    if (i == "conda")
      cfg.ic = IcKind::CondA;
    else if (i == "condb")
      cfg.ic = IcKind::CondB;
    else if (i == "constant")
      cfg.ic = IcKind::Constant;
    else if (i == "eigenfunction")
      cfg.ic = IcKind::Eigenfunction;
    else if (i == "file")
      cfg.ic = IcKind::File;
    else
      issues.add(reader.line_of("ic"),
                 "ic: expected condA|condB|constant|eigenfunction|file, got '" + *ic + "'");
  } else if (!reader.has("ic")) {
    issues.add(0, "missing required key 'ic'");
  }
  if (auto v = reader.real("ic.value")) cfg.ic_value = *v;
  if (auto v = reader.real("ic.amplitude")) cfg.ic_amplitude = *v;
  if (auto modes = reader.integers("ic.mode")) {
    cfg.ic_mode = *modes;
    if (dim != 0 && cfg.ic_mode.size() != dim)
      issues.add(reader.line_of("ic.mode"), "ic.mode: need one mode index per axis");
    for (std::size_t m : cfg.ic_mode)
      if (m < 1) issues.add(reader.line_of("ic.mode"), "ic.mode: modes are 1-based");
  } else if (dim != 0) {
    cfg.ic_mode.assign(dim, 1);
  }
  if ((cfg.ic == IcKind::CondA || cfg.ic == IcKind::CondB)) {
    if (dim != 0 && dim != 2)
      issues.add(0, "ic " + to_string(cfg.ic) + " requires a 2-D grid");
    if (cfg.model != ModelKind::PredPrey)
      issues.add(0, "ic " + to_string(cfg.ic) + " requires the predprey model");
    else if (cfg.predprey.b > 0 && cfg.predprey.c > 0 && !(cfg.predprey.c < cfg.predprey.b))
      issues.add(0, "ic " + to_string(cfg.ic) +
                        " needs the coexistence state: requires c < b");
  }

  // Output.
  if (auto v = reader.integer("snapshot_every")) cfg.snapshot_every = *v;
  if (auto v = reader.text("out_dir")) cfg.out_dir = *v;
  if (auto v = reader.integer("seed")) cfg.seed = *v;

  // Per-species sections.
  const std::size_t max_species = 8;
  cfg.species.clear();
  for (std::size_t s = 1; s <= max_species; ++s) {
    const std::string prefix = "species." + std::to_string(s) + ".";
    SpeciesConfig sc;
    bool any = false;
    if (auto v = reader.real(prefix + "diffusion")) {
      sc.diffusion = *v;
      any = true;
      if (!(*v > 0.0))
        issues.add(reader.line_of(prefix + "diffusion"),
                   "species." + std::to_string(s) + ": diffusion must be positive");
    }
    if (auto v = reader.real(prefix + "ic_value")) {
      sc.ic_value = *v;
      any = true;
    }
    if (auto v = reader.text(prefix + "ic_file")) {
      sc.ic_file = *v;
      any = true;
    }
    if (any && cfg.species.size() < s) cfg.species.resize(s);
    if (any) cfg.species[s - 1] = sc;
  }

  reader.reject_unused();

  // Cross checks that need the final model.
  const std::size_t want = cfg.model == ModelKind::PredPrey ? 2 : 1;
  if (cfg.species.size() > want)
    issues.add(0, "config names species." + std::to_string(cfg.species.size()) +
                      " but the " + to_string(cfg.model) + " model has " +
                      std::to_string(want) + " species");
  if (cfg.ic == IcKind::File) {
    cfg.species.resize(want);
    for (std::size_t s = 0; s < want; ++s)
      if (!cfg.species[s].ic_file)
        issues.add(0, "ic file: missing ic_file in [species." + std::to_string(s + 1) + "]");
  }

  if (!issues.empty()) throw ConfigError(std::move(issues.list));
  cfg.species.resize(want);
  return cfg;
}

RunConfig load_config_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigError({"cannot open config file: " + path});
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_config(ss.str());
}

std::size_t RunConfig::species_count() const {
  return model == ModelKind::PredPrey ? 2 : 1;
}

std::vector<double> RunConfig::species_diffusion() const {
  std::vector<double> d(species_count(), diffusion);
  if (model == ModelKind::PredPrey && species_count() == 2)
    d[1] = predprey.delta * diffusion;
  for (std::size_t s = 0; s < d.size(); ++s)
    if (s < species.size() && species[s].diffusion) d[s] = *species[s].diffusion;
  return d;
}

std::size_t RunConfig::step_count() const {
  const double r = t_final / tau;
  if (!nearly_integer(r))
    throw std::invalid_argument("t_final / tau must be an integer step count");
  return static_cast<std::size_t>(std::llround(r));
}

ReactionSpec RunConfig::make_reaction() const {
  switch (model) {
    case ModelKind::None: return ReactionSpec::none(1);
    case ModelKind::Fisher: return ReactionSpec::fisher(fisher);
    case ModelKind::PredPrey: return ReactionSpec::predprey(predprey);
  }
  return ReactionSpec::none(1);
}

}  // namespace fracrd
