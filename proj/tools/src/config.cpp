#include "infeig_app/config.hpp"

#include <cctype>
#include <cmath>
#include <fstream>
#include <functional>
#include <set>
#include <sstream>

#include "infeig/errors.hpp"

namespace infeig::app {

namespace {

std::string_view trim(std::string_view s, std::size_t& lead) {
    lead = 0;
    while (lead < s.size() && std::isspace(static_cast<unsigned char>(s[lead]))) ++lead;
    std::size_t end = s.size();
    while (end > lead && std::isspace(static_cast<unsigned char>(s[end - 1]))) --end;
    return s.substr(lead, end - lead);
}

bool valid_key(std::string_view key) {
    if (key.empty()) return false;
    for (char ch : key) {
        const auto u = static_cast<unsigned char>(ch);
        if (!(std::islower(u) || std::isdigit(u) || ch == '_' || ch == '.')) return false;
    }
    return key.front() != '.' && key.back() != '.';
}

// one `key = value` line; offsets are relative to `base`
std::pair<std::string, ConfigEntry> split_assignment(std::string_view line, std::size_t base) {
    const std::size_t eq = line.find('=');
    if (eq == std::string_view::npos) throw ConfigError(base, "expected key=value");
    std::size_t klead = 0, vlead = 0;
    const std::string_view key = trim(line.substr(0, eq), klead);
    const std::string_view value = trim(line.substr(eq + 1), vlead);
    if (!valid_key(key)) throw ConfigError(base + klead, "malformed key '" + std::string(key) + "'");
    if (value.empty()) throw ConfigError(base + eq + 1, "empty value for '" + std::string(key) + "'");
    ConfigEntry e;
    e.value = std::string(value);
    e.key_offset = base + klead;
    e.value_offset = base + eq + 1 + vlead;
    return {std::string(key), std::move(e)};
}

const std::set<std::string>& known_keys() {
    static const std::set<std::string> keys{
        "domain.type", "domain.a", "domain.b", "domain.cx", "domain.cy", "domain.radius", "domain.inner_radius",
        "domain.outer_radius", "domain.lo_x", "domain.lo_y", "domain.hi_x", "domain.hi_y",
        "grid.h", "grid.s",
        "coeff.bx", "coeff.by", "coeff.c", "coeff.g", "coeff.h0", "coeff.lambda", "coeff.c_preset",
        "example43.r", "example43.rho", "example43.eps", "example43.beta1", "example43.beta2",
        "example43.beta2_fraction", "example43.k", "example43.outer_value",
        "solver.tol", "solver.max_sweeps", "solver.max_outer", "solver.max_policy_iterations", "solver.blowup",
        "solver.inner", "solver.sweep_order", "solver.accelerate",
        "eigen.bisect_tol",
        "evolve.t", "evolve.output_interval", "evolve.dt", "evolve.decay_check",
        "mpcheck.seeds", "mpcheck.lambda", "mpcheck.lambda_offset", "mpcheck.t_max", "mpcheck.blowup",
        "mpcheck.decay",
        "output.dir",
    };
    return keys;
}

class Reader {
public:
    explicit Reader(const RawConfig& raw) : raw_(raw) {}

    const ConfigEntry* entry(const std::string& key) const { return raw_.find(key); }

    [[noreturn]] void fail(const ConfigEntry& e, std::size_t at, const std::string& what) const {
        if (e.override_text.empty()) throw ConfigError(e.value_offset + at, what);
        throw ConfigError(e.value_offset + at, what + " in --set '" + e.override_text + "'");
    }

    // numeric values may be constant expressions such as 1/64
    std::optional<double> number(const std::string& key) {
        const ConfigEntry* e = entry(key);
        if (!e) return std::nullopt;
        expr::Ast ast = parse(*e, key);
        if (!ast.is_constant()) fail(*e, 0, key + " must be a constant");
        const double v = ast.eval(expr::Variables{});
        if (!std::isfinite(v)) fail(*e, 0, key + " is not finite");
        return v;
    }

    double number(const std::string& key, double fallback) { return number(key).value_or(fallback); }

    double positive(const std::string& key, double fallback) {
        const double v = number(key, fallback);
        if (!(v > 0.0)) fail(*raw_.find(key), 0, key + " must be positive");
        return v;
    }

    int integer(const std::string& key, int fallback, int min) {
        const auto v = number(key);
        if (!v) return fallback;
        const ConfigEntry& e = *raw_.find(key);
        if (std::floor(*v) != *v || *v < min || *v > 2e9) fail(e, 0, key + " must be an integer >= " + std::to_string(min));
        return static_cast<int>(*v);
    }

    bool boolean(const std::string& key, bool fallback) {
        const ConfigEntry* e = entry(key);
        if (!e) return fallback;
        if (e->value == "true" || e->value == "1" || e->value == "yes") return true;
        if (e->value == "false" || e->value == "0" || e->value == "no") return false;
        fail(*e, 0, key + " must be true or false");
    }

    std::string word(const std::string& key, const std::string& fallback, const std::vector<std::string>& allowed) {
        const ConfigEntry* e = entry(key);
        if (!e) return fallback;
        for (const auto& a : allowed)
            if (e->value == a) return a;
        std::string list;
        for (const auto& a : allowed) list += (list.empty() ? "" : ", ") + a;
        fail(*e, 0, key + " must be one of: " + list);
    }

    std::string expression(const std::string& key, const std::string& fallback) {
        const ConfigEntry* e = entry(key);
        if (!e) return fallback;
        parse(*e, key);
        return e->value;
    }

    std::string text(const std::string& key, const std::string& fallback) {
        const ConfigEntry* e = entry(key);
        return e ? e->value : fallback;
    }

    void reject_unknown() const {
        for (const auto& [key, e] : raw_.entries()) {
            if (known_keys().count(key)) continue;
            if (e.override_text.empty()) throw ConfigError(e.key_offset, "unknown key '" + key + "'");
            throw ConfigError(e.key_offset, "unknown key '" + key + "' in --set '" + e.override_text + "'");
        }
    }

    expr::Ast parse(const ConfigEntry& e, const std::string& key) {
        try {
            return expr::parse(e.value);
        } catch (const SyntaxError& err) {
            fail(e, err.offset(), key + ": " + err.what());
        } catch (const UnknownIdentifier& err) {
            fail(e, err.offset(), key + ": " + err.what());
        }
    }

private:
    const RawConfig& raw_;
};

Domain read_domain(Reader& r) {
    const std::string type = r.word("domain.type", "interval", {"interval", "disk", "annulus", "rectangle"});
    try {
        if (type == "interval") return Domain(Interval{r.number("domain.a", 0.0), r.number("domain.b", 1.0)});
        const Point center{r.number("domain.cx", 0.0), r.number("domain.cy", 0.0)};
        if (type == "disk") return Domain(Disk{center, r.number("domain.radius", 1.0)});
        if (type == "annulus")
            return Domain(Annulus{center, r.number("domain.inner_radius", 0.25), r.number("domain.outer_radius", 1.0)});
        return Domain(Rectangle{{r.number("domain.lo_x", 0.0), r.number("domain.lo_y", 0.0)},
                                {r.number("domain.hi_x", 1.0), r.number("domain.hi_y", 1.0)}});
    } catch (const InvalidParams& e) {
        const ConfigEntry* at = r.entry("domain.type");
        throw ConfigError(at ? at->value_offset : 0, std::string("domain: ") + e.what());
    }
}

std::vector<std::string> split_seeds(const std::string& text) {
    std::vector<std::string> out;
    std::size_t start = 0;
    while (start <= text.size()) {
        const std::size_t end = std::min(text.find(';', start), text.size());
        std::size_t lead = 0;
        const std::string_view item = trim(std::string_view(text).substr(start, end - start), lead);
        if (!item.empty()) out.emplace_back(item);
        start = end + 1;
    }
    return out;
}

}  // namespace

RawConfig RawConfig::parse(std::string_view text) {
    RawConfig cfg;
    std::size_t pos = 0;
    while (pos < text.size()) {
        std::size_t end = text.find('\n', pos);
        if (end == std::string_view::npos) end = text.size();
        std::string_view line = text.substr(pos, end - pos);
        if (const std::size_t hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
        std::size_t lead = 0;
        if (!trim(line, lead).empty()) {
            auto [key, entry] = split_assignment(line, pos);
            if (cfg.entries_.count(key)) throw ConfigError(entry.key_offset, "duplicate key '" + key + "'");
            cfg.entries_.emplace(std::move(key), std::move(entry));
        }
        pos = end + 1;
    }
    return cfg;
}

RawConfig RawConfig::load(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ConfigError(0, "cannot read config file " + path.string());
    std::ostringstream ss;
    ss << in.rdbuf();
    return parse(ss.str());
}

void RawConfig::set(std::string_view assignment) {
    auto [key, entry] = split_assignment(assignment, 0);
    entry.override_text = std::string(assignment);
    entries_[key] = std::move(entry);
}

const ConfigEntry* RawConfig::find(const std::string& key) const {
    const auto it = entries_.find(key);
    return it == entries_.end() ? nullptr : &it->second;
}

RunConfig build_run_config(const RawConfig& raw) {
    Reader r(raw);
    r.reject_unknown();
    RunConfig cfg;
    cfg.domain = read_domain(r);
    cfg.h = r.positive("grid.h", cfg.h);
    cfg.s = r.integer("grid.s", cfg.s, 1);

    cfg.bx = r.expression("coeff.bx", cfg.bx);
    cfg.by = r.expression("coeff.by", cfg.by);
    cfg.c = r.expression("coeff.c", cfg.c);
    cfg.g = r.expression("coeff.g", cfg.g);
    cfg.h0 = r.expression("coeff.h0", cfg.h0);
    cfg.lambda = r.number("coeff.lambda", 0.0);
    if (r.word("coeff.c_preset", "none", {"none", "example43"}) == "example43") {
        Example43Params p;
        p.R = r.number("example43.r", p.R);
        p.rho = r.number("example43.rho", p.rho);
        p.eps = r.number("example43.eps", p.eps);
        p.beta1 = r.number("example43.beta1", p.beta1);
        p.k = r.number("example43.k", p.k);
        p.outer_value = r.number("example43.outer_value");
        const auto beta2 = r.number("example43.beta2");
        const double fraction = r.number("example43.beta2_fraction", 0.5);
        const ConfigEntry* at = raw.find("coeff.c_preset");
        try {
            p.beta2 = beta2 ? *beta2 : fraction * example_43_bound(p);
            p.validate();
        } catch (const InvalidParams& e) {
            throw ConfigError(at->value_offset, std::string("example43: ") + e.what());
        }
        cfg.example43 = p;
    }

    SolverConfig& sc = cfg.solver;
    sc.tol = r.positive("solver.tol", sc.tol);
    sc.max_sweeps = r.integer("solver.max_sweeps", sc.max_sweeps, 1);
    sc.max_outer = r.integer("solver.max_outer", sc.max_outer, 1);
    sc.max_policy_iterations = r.integer("solver.max_policy_iterations", sc.max_policy_iterations, 0);
    sc.blowup_threshold = r.number("solver.blowup", sc.blowup_threshold);
    sc.inner = r.word("solver.inner", "policy", {"policy", "gauss_seidel"}) == "policy" ? InnerMethod::PolicyIteration
                                                                                        : InnerMethod::GaussSeidel;
    const std::string order = r.word("solver.sweep_order", "lexicographic", {"lexicographic", "reverse", "symmetric"});
    sc.sweep_order = order == "reverse"     ? SweepOrder::Reverse
                     : order == "symmetric" ? SweepOrder::Symmetric
                                            : SweepOrder::Lexicographic;
    sc.accelerate = r.boolean("solver.accelerate", sc.accelerate);
    try {
        sc.validate();
    } catch (const InvalidParams& e) {
        const ConfigEntry* at = raw.find("solver.blowup");
        throw ConfigError(at ? at->value_offset : 0, std::string("solver: ") + e.what());
    }

    cfg.bisect_tol = r.positive("eigen.bisect_tol", cfg.bisect_tol);

    cfg.evolve.T = r.positive("evolve.t", cfg.evolve.T);
    cfg.evolve.output_interval = r.number("evolve.output_interval", 0.0);
    cfg.evolve.dt = r.number("evolve.dt", 0.0);
    cfg.evolve.decay_check = r.boolean("evolve.decay_check", false);

    MpcheckSettings& mp = cfg.mpcheck;
    if (const ConfigEntry* e = r.entry("mpcheck.seeds")) {
        mp.seeds = split_seeds(e->value);
        if (mp.seeds.empty()) r.fail(*e, 0, "mpcheck.seeds is empty");
        for (const auto& s : mp.seeds) {
            if (s == "bump" || s == "constant" || s == "eigenfunction") continue;
            try {
                expr::parse(s);
            } catch (const Error& err) {
                r.fail(*e, e->value.find(s), std::string("mpcheck.seeds: ") + err.what());
            }
        }
    }
    mp.lambda = r.number("mpcheck.lambda");
    mp.lambda_offset = r.number("mpcheck.lambda_offset");
    if (mp.lambda && mp.lambda_offset)
        r.fail(*raw.find("mpcheck.lambda_offset"), 0, "set mpcheck.lambda or mpcheck.lambda_offset, not both");
    mp.t_max = r.positive("mpcheck.t_max", mp.t_max);
    mp.blowup = r.positive("mpcheck.blowup", mp.blowup);
    mp.decay = r.positive("mpcheck.decay", mp.decay);

    cfg.out_dir = r.text("output.dir", cfg.out_dir.string());
    return cfg;
}

RunConfig load_run_config(const std::filesystem::path& path, const std::vector<std::string>& overrides) {
    RawConfig raw = path.empty() ? RawConfig{} : RawConfig::load(path);
    for (const auto& o : overrides) raw.set(o);
    return build_run_config(raw);
}

Inputs materialize(const RunConfig& cfg) {
    Inputs in;
    in.grid = make_grid(cfg.domain, cfg.h, cfg.s);
    const Grid& grid = *in.grid;
    const Point center = cfg.domain.center();
    auto field = [&](const std::string& src) {
        const expr::Ast ast = expr::parse(src);
        return ScalarField::sample(grid, [&](const Point& p) { return ast.eval(p, center); });
    };
    const expr::Ast bx = expr::parse(cfg.bx);
    const expr::Ast by = expr::parse(cfg.by);
    in.b = VectorField::sample(grid, [&](const Point& p) { return Point{bx.eval(p, center), by.eval(p, center)}; });
    in.c = cfg.example43 ? make_sign_changing_c(*cfg.example43, grid) : field(cfg.c);
    in.g = field(cfg.g);
    in.h0 = field(cfg.h0);
    return in;
}

ScalarField seed_field(const std::string& source, const Grid& grid, const ScalarField* eigenfunction) {
    const Point center = grid.domain().center();
    if (source == "bump") {
        return ScalarField::sample(grid, [&](const Point& p) {
            const double dx = p[0] - center[0], dy = p[1] - center[1];
            return std::exp(-20.0 * (dx * dx + dy * dy));
        });
    }
    if (source == "constant") return ScalarField::constant(grid, 1.0);
    if (source == "eigenfunction") {
        if (!eigenfunction) throw InvalidParams("eigenfunction seed needs an eigenfunction");
        return *eigenfunction;
    }
    const expr::Ast ast = expr::parse(source);
    return ScalarField::sample(grid, [&](const Point& p) { return ast.eval(p, center); });
}

}  // namespace infeig::app
