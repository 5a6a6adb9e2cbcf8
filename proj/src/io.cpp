#include "qglab/io.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <map>
#include <sstream>

#include "qglab/errors.hpp"
#include "qglab/fields.hpp"
#include "qglab/snapshot.hpp"

namespace qglab {

namespace {

std::string trim(const std::string& s) {
    const auto b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos) return {};
    const auto e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

double to_double(const std::string& v, int line, const std::string& key) {
    try {
        std::size_t pos = 0;
        const double x = std::stod(v, &pos);
        if (pos != v.size() || !std::isfinite(x)) throw std::invalid_argument(v);
        return x;
    } catch (const std::exception&) {
        throw ParseError(line, "'" + key + "' expects a number, got '" + v + "'");
    }
}

long long to_integer(const std::string& v, int line, const std::string& key) {
    try {
        std::size_t pos = 0;
        const long long x = std::stoll(v, &pos);
        if (pos != v.size()) throw std::invalid_argument(v);
        return x;
    } catch (const std::exception&) {
        throw ParseError(line, "'" + key + "' expects an integer, got '" + v + "'");
    }
}

bool to_bool(const std::string& v, int line, const std::string& key) {
    if (v == "true" || v == "1" || v == "yes" || v == "on") return true;
    if (v == "false" || v == "0" || v == "no" || v == "off") return false;
    throw ParseError(line, "'" + key + "' expects a boolean, got '" + v + "'");
}

std::vector<double> split_numbers(const std::string& s, const std::string& what) {
    std::vector<double> out;
    std::stringstream ss(s);
    std::string item;
    while (std::getline(ss, item, ',')) {
        try {
            std::size_t pos = 0;
            out.push_back(std::stod(trim(item), &pos));
            if (pos != trim(item).size()) throw std::invalid_argument(item);
        } catch (const std::exception&) {
            throw ValidationError("malformed " + what + " '" + s + "'");
        }
    }
    return out;
}

std::string fmt17(double x) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
}

}  // namespace

// ---------------------------------------------------------------------------

void RunConfig::validate() const {
    model_params().validate();
    if (n < 8 || n % 2 != 0) throw ValidationError("n must be even and >= 8");
    stepper().validate();
    if (!(sigma > 1.0)) throw ValidationError("sigma must exceed 1");
    if (!(c0 > 0.0)) throw ValidationError("C0 must be positive");
    if (!(m_threshold > 0.0)) throw ValidationError("M must be positive");
    if (output_dir.empty()) throw ValidationError("output_dir must not be empty");
    if (is_preset(init)) make_preset(init, Grid(n), seed);
    if (forcing != "none") {
        if (!is_preset(forcing)) throw ValidationError("forcing must be 'none' or a preset");
        if (model != Model::dissipative) throw ValidationError("forcing is only supported for the dissipative model");
        make_preset(forcing, Grid(n), seed);
    }
}

ModelParams RunConfig::model_params() const {
    ModelParams p;
    p.model = model;
    p.alpha = alpha;
    p.kappa = kappa;
    p.mu = mu;
    if (forcing != "none" && is_preset(forcing)) {
        SpectralField f = make_preset(forcing, Grid(n), seed + 1);
        f *= forcing_amplitude;
        p.forcing = std::move(f);
    }
    return p;
}

StepperConfig RunConfig::stepper() const {
    StepperConfig c;
    c.dt = dt;
    c.t_end = t_end;
    c.scheme = scheme;
    c.diag_every = diag_every;
    c.snapshot_every = snapshot_every;
    c.dealias = dealias;
    return c;
}

NormOptions RunConfig::norm_options() const {
    NormOptions o;
    o.s = s;
    o.sigma = sigma;
    return o;
}

RunConfig parse_config(const std::string& text) {
    RunConfig c;
    std::map<std::string, int> seen;
    std::istringstream in(text);
    std::string raw;
    int line = 0;
    while (std::getline(in, raw)) {
        ++line;
        const auto hash = raw.find('#');
        const std::string body = trim(hash == std::string::npos ? raw : raw.substr(0, hash));
        if (body.empty()) continue;
        const auto eq = body.find('=');
        if (eq == std::string::npos) throw ParseError(line, "expected key=value, got '" + body + "'");
        const std::string key = trim(body.substr(0, eq));
        const std::string val = trim(body.substr(eq + 1));
        if (key.empty()) throw ParseError(line, "empty key");
        if (auto [it, fresh] = seen.emplace(key, line); !fresh)
            throw ParseError(line, "duplicate key '" + key + "' (first set on line " + std::to_string(it->second) + ")");

        try {
            if (key == "model") c.model = model_from_string(val);
            else if (key == "alpha") c.alpha = to_double(val, line, key);
            else if (key == "kappa") c.kappa = to_double(val, line, key);
            else if (key == "mu") c.mu = to_double(val, line, key);
            else if (key == "n") c.n = int(to_integer(val, line, key));
            else if (key == "dt") c.dt = to_double(val, line, key);
            else if (key == "t_end") c.t_end = to_double(val, line, key);
            else if (key == "scheme") c.scheme = scheme_from_string(val);
            else if (key == "dealias") c.dealias = to_bool(val, line, key);
            else if (key == "init") c.init = val;
            else if (key == "seed") c.seed = std::uint64_t(to_integer(val, line, key));
            else if (key == "diag_every") c.diag_every = int(to_integer(val, line, key));
            else if (key == "snapshot_every") c.snapshot_every = int(to_integer(val, line, key));
            else if (key == "output_dir") c.output_dir = val;
            else if (key == "s") c.s = to_double(val, line, key);
            else if (key == "sigma") c.sigma = to_double(val, line, key);
            else if (key == "C0") c.c0 = to_double(val, line, key);
            else if (key == "C") c.c_ladder = to_double(val, line, key);
            else if (key == "M") c.m_threshold = to_double(val, line, key);
            else if (key == "mollifier") c.mollifier = mollifier_profile_from_string(val);
            else if (key == "forcing") c.forcing = val;
            else if (key == "forcing_amplitude") c.forcing_amplitude = to_double(val, line, key);
            else throw ParseError(line, "unknown key '" + key + "'");
        } catch (const ParseError&) {
            throw;
        } catch (const ValidationError& e) {
            throw ParseError(line, e.what());
        }
    }
    c.validate();
    return c;
}

RunConfig load_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open config '" + path + "'");
    std::stringstream ss;
    ss << in.rdbuf();
    return parse_config(ss.str());
}

std::string format_config(const RunConfig& c) {
    std::ostringstream o;
    o << "model=" << to_string(c.model) << "\n"
      << "alpha=" << fmt17(c.alpha) << "\n"
      << "kappa=" << fmt17(c.kappa) << "\n"
      << "mu=" << fmt17(c.mu) << "\n"
      << "n=" << c.n << "\n"
      << "dt=" << fmt17(c.dt) << "\n"
      << "t_end=" << fmt17(c.t_end) << "\n"
      << "scheme=" << to_string(c.scheme) << "\n"
      << "dealias=" << (c.dealias ? "true" : "false") << "\n"
      << "init=" << c.init << "\n"
      << "seed=" << c.seed << "\n"
      << "diag_every=" << c.diag_every << "\n"
      << "snapshot_every=" << c.snapshot_every << "\n"
      << "output_dir=" << c.output_dir << "\n"
      << "s=" << fmt17(c.s) << "\n"
      << "sigma=" << fmt17(c.sigma) << "\n"
      << "C0=" << fmt17(c.c0) << "\n"
      << "C=" << fmt17(c.c_ladder) << "\n"
      << "M=" << fmt17(c.m_threshold) << "\n"
      << "mollifier=" << to_string(c.mollifier) << "\n"
      << "forcing=" << c.forcing << "\n"
      << "forcing_amplitude=" << fmt17(c.forcing_amplitude) << "\n";
    return o.str();
}

// ---------------------------------------------------------------------------

bool is_preset(const std::string& spec) {
    return spec == "cmt" || spec.rfind("single:", 0) == 0 || spec.rfind("random:", 0) == 0;
}

SpectralField make_preset(const std::string& spec, const Grid& grid, std::uint64_t seed) {
    if (spec == "cmt") return cmt_datum(grid);
    if (spec.rfind("single:", 0) == 0) {
        const auto k = split_numbers(spec.substr(7), "single-mode preset");
        if (k.size() != 2 || k[0] != std::floor(k[0]) || k[1] != std::floor(k[1]))
            throw ValidationError("single preset expects two integers: single:k1,k2");
        return single_mode(grid, int(k[0]), int(k[1]));
    }
    if (spec.rfind("random:", 0) == 0) {
        const auto a = split_numbers(spec.substr(7), "random preset");
        if (a.size() != 2) throw ValidationError("random preset expects random:smax,gamma");
        return random_shell_field(grid, a[0], a[1], seed);
    }
    throw ValidationError("unknown preset '" + spec + "'");
}

SpectralField initial_condition(const RunConfig& cfg) {
    if (is_preset(cfg.init)) return make_preset(cfg.init, cfg.grid(), cfg.seed);
    const Snapshot snap = load_snapshot(cfg.init);
    if (snap.theta.n() != cfg.n)
        throw ValidationError("snapshot grid n = " + std::to_string(snap.theta.n()) + " does not match config n = " +
                              std::to_string(cfg.n));
    return snap.spectral();
}

// ---------------------------------------------------------------------------

std::string format_series(const std::vector<NormRecord>& records) {
    if (records.empty()) throw IoError("refusing to write an empty series");
    std::string out = kSeriesHeader;
    out += '\n';
    for (const auto& r : records) {
        const double cols[] = {r.t,
                               r.lp.l2,
                               r.lp.l3,
                               r.lp.l4,
                               r.lp.linf,
                               r.hs.at(r.s_index),
                               r.hs.at(1.0),
                               r.energy,
                               r.mod_energy,
                               r.diss_integral,
                               r.balance_residual,
                               r.q_inf,
                               r.ladder};
        for (std::size_t i = 0; i < std::size(cols); ++i) {
            if (i) out += ',';
            out += fmt17(cols[i]);
        }
        out += '\n';
    }
    return out;
}

void write_series(const std::string& path, const std::vector<NormRecord>& records) {
    const std::string text = format_series(records);
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw IoError("cannot open '" + path + "' for writing");
    out << text;
    if (!out) throw IoError("failed writing '" + path + "'");
}

SeriesTable read_series(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open series '" + path + "'");
    SeriesTable t;
    std::string line;
    if (!std::getline(in, line)) throw IoError("series '" + path + "' is empty");
    {
        std::stringstream ss(line);
        std::string col;
        while (std::getline(ss, col, ',')) t.columns.push_back(col);
    }
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        std::vector<double> row;
        std::stringstream ss(line);
        std::string cell;
        while (std::getline(ss, cell, ',')) row.push_back(std::stod(cell));
        if (row.size() != t.columns.size()) throw IoError("ragged row in '" + path + "'");
        t.rows.push_back(std::move(row));
    }
    return t;
}

}  // namespace qglab
