#include "qmhd/config.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <sstream>

namespace qmhd {

void PhysParams::validate() const {
    if (!(Re_s > 0)) throw ConfigError("re_s must be > 0");
    if (!(Pr > 0)) throw ConfigError("pr must be > 0");
    if (Ma < 0) throw ConfigError("ma must be >= 0");
    if (Ha < 0) throw ConfigError("ha must be >= 0");
    if (tau0 < 0) throw ConfigError("tau0 must be >= 0");
    if (!(effective_tau(*this) > 0)) throw ConfigError("effective tau must be > 0");
    if (!(dt > 0)) throw ConfigError("dt must be > 0");
    if (!(eps_steady > 0)) throw ConfigError("eps_steady must be > 0");
    if (!(poisson_tol > 0)) throw ConfigError("poisson_tol must be > 0");
    if (poisson_max_iter < 0) throw ConfigError("poisson_max_iter must be >= 0");
    if (!(sor_omega > 0) || sor_omega >= 2)
        throw ConfigError("sor_omega must lie in (0, 2)");
}

void CaseConfig::validate() const {
    if (n1 < 3 || n2 < 3) throw ConfigError("grid needs n1, n2 >= 3");
    phys.validate();
    if (phys.Ha > 0 && variant == FieldVariant::None)
        throw ConfigError("ha > 0 requires a field variant (axial, A or B)");
    if (variant == FieldVariant::Axial && geometry != Geometry::CylindricalAxisym)
        throw ConfigError("variant axial applies to the cylindrical geometry only");
    if ((variant == FieldVariant::A || variant == FieldVariant::B) &&
        geometry != Geometry::Planar)
        throw ConfigError("variants A and B apply to the planar geometry only");
    if (max_steps < 1) throw ConfigError("max_steps must be >= 1");
    if (snapshot_every < 1) throw ConfigError("snapshot_every must be >= 1");
    if (threads < 0) throw ConfigError("threads must be >= 0");
}

std::string to_string(Geometry g) {
    return g == Geometry::CylindricalAxisym ? "cylindrical" : "planar";
}

std::string to_string(FieldVariant v) {
    switch (v) {
        case FieldVariant::None: return "none";
        case FieldVariant::Axial: return "axial";
        case FieldVariant::A: return "A";
        case FieldVariant::B: return "B";
    }
    return "none";
}

namespace {

CaseConfig base_case(Geometry g, int n1, int n2, double Ha, FieldVariant v) {
    CaseConfig c;
    c.geometry = g;
    c.n1 = n1;
    c.n2 = n2;
    c.variant = v;
    c.phys.Ha = Ha;
    c.phys.Gr = 0.0;
    c.phys.Ma = 1000.0;
    c.phys.Pr = 0.018;
    c.phys.Re_s = 1e7;
    if (g == Geometry::CylindricalAxisym) {
        c.phys.tau0 = 2e-7;
        c.phys.eps_steady = 1e-4;
    } else {
        c.phys.tau0 = 2e-5;
        c.phys.eps_steady = 1e-3;
    }
    c.phys.dt = 1e-7;
    return c;
}

Preset make_preset(const std::string& name, CaseConfig c, double psi, long steps) {
    c.preset_name = name;
    c.expected_psi_min = psi;
    c.expected_steps = steps;
    return Preset{name, c, psi, steps};
}

std::vector<Preset> build_presets() {
    using G = Geometry;
    using V = FieldVariant;
    std::vector<Preset> t;

    // Reference runs, one per benchmark table row, all at the shared
    // parameter set (dt = 1e-7, per-geometry tau0 and eps_steady).
    t.push_back(make_preset("table1-ha0",
        base_case(G::CylindricalAxisym, 82, 162, 0.0, V::None), -249.6, 569477));
    t.push_back(make_preset("table1-ha50",
        base_case(G::CylindricalAxisym, 82, 162, 50.0, V::Axial), -52.2, 84326));
    t.push_back(make_preset("table1-ha100",
        base_case(G::CylindricalAxisym, 82, 162, 100.0, V::Axial), -37.1, 45400));
    t.push_back(make_preset("table1-ha100-fine",
        base_case(G::CylindricalAxisym, 162, 322, 100.0, V::Axial), -37.0, 45574));

    t.push_back(make_preset("table2-ha0",
        base_case(G::Planar, 42, 42, 0.0, V::None), -134.3, 1500000));
    t.push_back(make_preset("table2-ha50-A-22",
        base_case(G::Planar, 22, 22, 50.0, V::A), -23.83, 437210));
    t.push_back(make_preset("table2-ha50-A",
        base_case(G::Planar, 42, 42, 50.0, V::A), -22.18, 440130));
    t.push_back(make_preset("table2-ha50-A-82",
        base_case(G::Planar, 82, 82, 50.0, V::A), -21.88, 439553));
    t.push_back(make_preset("table2-ha100-A",
        base_case(G::Planar, 42, 42, 100.0, V::A), -5.224, 353705));
    t.push_back(make_preset("table2-ha50-B",
        base_case(G::Planar, 42, 42, 50.0, V::B), -47.785, 441100));
    t.push_back(make_preset("table2-ha100-B",
        base_case(G::Planar, 42, 42, 100.0, V::B), -41.124, 375754));
    return t;
}

} // namespace

const std::vector<Preset>& presets() {
    static const std::vector<Preset> table = build_presets();
    return table;
}

const Preset* find_preset(const std::string& name) {
    for (const Preset& p : presets())
        if (p.name == name) return &p;
    return nullptr;
}

CaseConfig expand_preset(const std::string& name) {
    const Preset* p = find_preset(name);
    if (!p) {
        std::string msg = "unknown preset '" + name + "'; available:";
        for (const Preset& q : presets()) msg += " " + q.name;
        throw ConfigError(msg);
    }
    return p->config;
}

namespace {

std::string trim(const std::string& s) {
    size_t a = s.find_first_not_of(" \t\r\n");
    if (a == std::string::npos) return "";
    size_t b = s.find_last_not_of(" \t\r\n");
    return s.substr(a, b - a + 1);
}

std::string lower(std::string s) {
    std::transform(s.begin(), s.end(), s.begin(),
                   [](unsigned char c) { return std::tolower(c); });
    return s;
}

[[noreturn]] void fail(int line, const std::string& what) {
    throw ConfigError("config line " + std::to_string(line) + ": " + what);
}

double parse_num(const std::string& v, int line) {
    try {
        size_t idx = 0;
        double x = std::stod(v, &idx);
        if (idx != v.size()) fail(line, "trailing characters in number '" + v + "'");
        return x;
    } catch (const ConfigError&) {
        throw;
    } catch (const std::exception&) {
        fail(line, "expected a number, got '" + v + "'");
    }
}

long parse_long(const std::string& v, int line) {
    double x = parse_num(v, line);
    long n = static_cast<long>(x);
    if (static_cast<double>(n) != x) fail(line, "expected an integer, got '" + v + "'");
    return n;
}

bool parse_bool(const std::string& v, int line) {
    std::string s = lower(v);
    if (s == "true" || s == "1" || s == "yes" || s == "on") return true;
    if (s == "false" || s == "0" || s == "no" || s == "off") return false;
    fail(line, "expected a boolean, got '" + v + "'");
}

Geometry parse_geometry(const std::string& v, int line) {
    std::string s = lower(v);
    if (s == "cylindrical") return Geometry::CylindricalAxisym;
    if (s == "planar") return Geometry::Planar;
    fail(line, "geometry must be 'cylindrical' or 'planar', got '" + v + "'");
}

FieldVariant parse_variant(const std::string& v, int line) {
    std::string s = lower(v);
    if (s == "none") return FieldVariant::None;
    if (s == "axial") return FieldVariant::Axial;
    if (s == "a") return FieldVariant::A;
    if (s == "b") return FieldVariant::B;
    fail(line, "variant must be 'none', 'axial', 'A' or 'B', got '" + v + "'");
}

} // namespace

CaseConfig parse_config(const std::string& text) {
    // first pass: collect key/value pairs, find the preset if any
    std::vector<std::pair<std::string, std::string>> pairs;
    std::vector<int> lines;
    std::string preset_value;
    int preset_line = 0;

    std::istringstream in(text);
    std::string raw;
    int lineno = 0;
    while (std::getline(in, raw)) {
        ++lineno;
        std::string s = raw;
        size_t hash = s.find('#');
        if (hash != std::string::npos) s = s.substr(0, hash);
        s = trim(s);
        if (s.empty()) continue;
        size_t eq = s.find('=');
        if (eq == std::string::npos) fail(lineno, "expected `key = value`, got '" + trim(raw) + "'");
        std::string key = lower(trim(s.substr(0, eq)));
        std::string val = trim(s.substr(eq + 1));
        if (key.empty()) fail(lineno, "empty key");
        if (val.empty()) fail(lineno, "empty value for key '" + key + "'");
        if (key == "preset") {
            preset_value = val;
            preset_line = lineno;
        } else {
            pairs.emplace_back(key, val);
            lines.push_back(lineno);
        }
    }

    CaseConfig cfg;
    bool have_geometry = false, have_n1 = false, have_n2 = false;
    if (!preset_value.empty()) {
        try {
            cfg = expand_preset(preset_value);
        } catch (const ConfigError& e) {
            fail(preset_line, e.what());
        }
        have_geometry = have_n1 = have_n2 = true;
    }

    for (size_t k = 0; k < pairs.size(); ++k) {
        const std::string& key = pairs[k].first;
        const std::string& val = pairs[k].second;
        int line = lines[k];
        if (key == "geometry") { cfg.geometry = parse_geometry(val, line); have_geometry = true; }
        else if (key == "n1") { cfg.n1 = static_cast<int>(parse_long(val, line)); have_n1 = true; }
        else if (key == "n2") { cfg.n2 = static_cast<int>(parse_long(val, line)); have_n2 = true; }
        else if (key == "variant") cfg.variant = parse_variant(val, line);
        else if (key == "gr") cfg.phys.Gr = parse_num(val, line);
        else if (key == "ha") cfg.phys.Ha = parse_num(val, line);
        else if (key == "pr") cfg.phys.Pr = parse_num(val, line);
        else if (key == "ma") cfg.phys.Ma = parse_num(val, line);
        else if (key == "re_s") cfg.phys.Re_s = parse_num(val, line);
        else if (key == "tau0") cfg.phys.tau0 = parse_num(val, line);
        else if (key == "dt") cfg.phys.dt = parse_num(val, line);
        else if (key == "eps_steady") cfg.phys.eps_steady = parse_num(val, line);
        else if (key == "poisson_tol") cfg.phys.poisson_tol = parse_num(val, line);
        else if (key == "poisson_max_iter") cfg.phys.poisson_max_iter = parse_long(val, line);
        else if (key == "sor_omega") cfg.phys.sor_omega = parse_num(val, line);
        else if (key == "output") cfg.output_dir = val;
        else if (key == "max_steps") cfg.max_steps = parse_long(val, line);
        else if (key == "snapshot_every") cfg.snapshot_every = parse_long(val, line);
        else if (key == "seed") cfg.seed = static_cast<unsigned>(parse_long(val, line));
        else if (key == "overwrite") cfg.overwrite = parse_bool(val, line);
        else if (key == "threads") cfg.threads = static_cast<int>(parse_long(val, line));
        else fail(line, "unknown key '" + key + "'");
    }

    if (!have_geometry || !have_n1 || !have_n2)
        throw ConfigError("config must set `preset` or at least: geometry, n1, n2");
    cfg.validate();
    return cfg;
}

CaseConfig parse_config_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open config file '" + path + "'");
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_config(buf.str());
}

std::string serialize_config(const CaseConfig& cfg) {
    std::ostringstream out;
    out.precision(17);
    if (!cfg.preset_name.empty()) out << "preset = " << cfg.preset_name << "\n";
    out << "geometry = " << to_string(cfg.geometry) << "\n"
        << "n1 = " << cfg.n1 << "\n"
        << "n2 = " << cfg.n2 << "\n"
        << "variant = " << to_string(cfg.variant) << "\n"
        << "gr = " << cfg.phys.Gr << "\n"
        << "ha = " << cfg.phys.Ha << "\n"
        << "pr = " << cfg.phys.Pr << "\n"
        << "ma = " << cfg.phys.Ma << "\n"
        << "re_s = " << cfg.phys.Re_s << "\n"
        << "tau0 = " << cfg.phys.tau0 << "\n"
        << "dt = " << cfg.phys.dt << "\n"
        << "eps_steady = " << cfg.phys.eps_steady << "\n"
        << "poisson_tol = " << cfg.phys.poisson_tol << "\n"
        << "poisson_max_iter = " << cfg.phys.poisson_max_iter << "\n"
        << "sor_omega = " << cfg.phys.sor_omega << "\n";
    if (!cfg.output_dir.empty()) out << "output = " << cfg.output_dir << "\n";
    out << "max_steps = " << cfg.max_steps << "\n"
        << "snapshot_every = " << cfg.snapshot_every << "\n"
        << "seed = " << cfg.seed << "\n"
        << "overwrite = " << (cfg.overwrite ? "true" : "false") << "\n"
        << "threads = " << cfg.threads << "\n";
    return out.str();
}

} // namespace qmhd
