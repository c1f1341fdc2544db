#include "pbound/io.hpp"

#include "pbound/errors.hpp"
#include "pbound/units.hpp"

#include <json.hpp>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstring>
#include <fstream>
#include <sstream>

namespace pbound::io {

using nlohmann::json;

namespace {

constexpr const char* traj_csv_magic = "# pbound-trajectory v1";
constexpr const char* traj_bin_magic = "PBTRJB1\n";
constexpr const char* vacf_magic = "# pbound-vacf v1";

std::string trim(const std::string& s) {
    std::size_t a = s.find_first_not_of(" \t\r\n");
    if (a == std::string::npos) return "";
    std::size_t b = s.find_last_not_of(" \t\r\n");
    return s.substr(a, b - a + 1);
}

std::string fmt_full(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

json config_to_json(const mdsim::SimConfig& cfg) {
    json j;
    j["n_particles"] = cfg.n_particles;
    j["dimension"] = cfg.dimension;
    j["number_density"] = cfg.number_density;
    j["temperature"] = cfg.temperature;
    j["dt"] = cfg.dt;
    j["n_equil_steps"] = cfg.n_equil_steps;
    j["n_prod_steps"] = cfg.n_prod_steps;
    j["sample_stride"] = cfg.sample_stride;
    j["seed"] = cfg.seed;
    j["record_positions"] = cfg.record_positions;
    j["record_energies"] = cfg.record_energies;
    if (const auto* lj = std::get_if<mdsim::LennardJones>(&cfg.interaction)) {
        j["interaction"] = {{"kind", "lj"}, {"cutoff", lj->cutoff}};
    } else {
        const auto& yk = std::get<mdsim::Yukawa>(cfg.interaction);
        j["interaction"] = {{"kind", "yukawa"},
                            {"screening", yk.screening},
                            {"coupling", yk.coupling},
                            {"magnetic_field", yk.magnetic_field},
                            {"cutoff", yk.cutoff}};
    }
    const char* th = cfg.thermostat.kind == mdsim::ThermostatKind::None ? "none"
                     : cfg.thermostat.kind == mdsim::ThermostatKind::VelocityRescale
                         ? "rescale"
                         : "langevin";
    j["thermostat"] = {{"kind", th},
                       {"interval", cfg.thermostat.interval},
                       {"friction", cfg.thermostat.friction}};
    return j;
}

mdsim::SimConfig config_from_json(const json& j) {
    mdsim::SimConfig cfg;
    cfg.n_particles = j.at("n_particles").get<int>();
    cfg.dimension = j.at("dimension").get<int>();
    cfg.number_density = j.at("number_density").get<double>();
    cfg.temperature = j.at("temperature").get<double>();
    cfg.dt = j.at("dt").get<double>();
    cfg.n_equil_steps = j.at("n_equil_steps").get<long>();
    cfg.n_prod_steps = j.at("n_prod_steps").get<long>();
    cfg.sample_stride = j.at("sample_stride").get<int>();
    cfg.seed = j.at("seed").get<std::uint64_t>();
    cfg.record_positions = j.at("record_positions").get<bool>();
    cfg.record_energies = j.at("record_energies").get<bool>();
    const auto& ji = j.at("interaction");
    if (ji.at("kind") == "lj") {
        cfg.interaction = mdsim::LennardJones{ji.at("cutoff").get<double>()};
    } else {
        mdsim::Yukawa yk;
        yk.screening = ji.at("screening").get<double>();
        yk.coupling = ji.at("coupling").get<double>();
        yk.magnetic_field = ji.at("magnetic_field").get<double>();
        yk.cutoff = ji.at("cutoff").get<double>();
        cfg.interaction = yk;
    }
    const auto& jt = j.at("thermostat");
    cfg.thermostat.kind = jt.at("kind") == "none" ? mdsim::ThermostatKind::None
                          : jt.at("kind") == "rescale"
                              ? mdsim::ThermostatKind::VelocityRescale
                              : mdsim::ThermostatKind::Langevin;
    cfg.thermostat.interval = jt.at("interval").get<int>();
    cfg.thermostat.friction = jt.at("friction").get<double>();
    return cfg;
}

void write_block(std::ofstream& out, const std::vector<double>& v) {
    out.write(reinterpret_cast<const char*>(v.data()),
              std::streamsize(v.size() * sizeof(double)));
}

void read_block(std::ifstream& in, std::vector<double>& v, std::size_t count) {
    v.resize(count);
    in.read(reinterpret_cast<char*>(v.data()), std::streamsize(count * sizeof(double)));
    if (!in) throw ValidationError("trajectory file truncated");
}

} // namespace

void write_trajectory(const mdsim::Trajectory& traj, const std::string& path,
                      TrajFormat format) {
    if (format == TrajFormat::Binary) {
        std::ofstream out(path, std::ios::binary);
        if (!out) throw ValidationError("cannot write " + path);
        json header;
        header["config"] = config_to_json(traj.config);
        header["n_samples"] = traj.n_samples();
        header["n_particles"] = traj.n_particles;
        header["dimension"] = traj.dimension;
        header["box_length"] = traj.box_length;
        header["has_positions"] = traj.has_positions();
        header["has_energies"] = traj.has_energies();
        const std::string hs = header.dump();
        const std::uint64_t hlen = hs.size();
        out.write(traj_bin_magic, 8);
        out.write(reinterpret_cast<const char*>(&hlen), sizeof(hlen));
        out.write(hs.data(), std::streamsize(hs.size()));
        write_block(out, traj.times);
        write_block(out, traj.velocities);
        if (traj.has_positions()) write_block(out, traj.positions);
        if (traj.has_energies()) {
            write_block(out, traj.local_potentials);
            write_block(out, traj.kinetic_per_particle);
        }
        return;
    }

    std::ofstream out(path);
    if (!out) throw ValidationError("cannot write " + path);
    out << traj_csv_magic << "\n";
    out << "# config: " << config_to_json(traj.config).dump() << "\n";
    out << "# box_length: " << fmt_full(traj.box_length) << "\n";
    out << "time,particle";
    const int d = traj.dimension;
    const char* comp = "xyz";
    for (int k = 0; k < d; ++k) out << ",v" << comp[k];
    if (traj.has_positions())
        for (int k = 0; k < d; ++k) out << ',' << comp[k];
    if (traj.has_energies()) out << ",V,K";
    out << "\n";
    for (int s = 0; s < traj.n_samples(); ++s)
        for (int i = 0; i < traj.n_particles; ++i) {
            out << fmt_full(traj.times[s]) << ',' << i;
            for (int k = 0; k < d; ++k) out << ',' << fmt_full(traj.velocity(s, i, k));
            if (traj.has_positions())
                for (int k = 0; k < d; ++k) out << ',' << fmt_full(traj.position(s, i, k));
            if (traj.has_energies())
                out << ',' << fmt_full(traj.local_potential(s, i)) << ','
                    << fmt_full(traj.kinetic(s, i));
            out << "\n";
        }
}

mdsim::Trajectory read_trajectory(const std::string& path) {
    // Binary?
    {
        std::ifstream in(path, std::ios::binary);
        if (!in) throw ValidationError("cannot open " + path);
        char magic[8];
        in.read(magic, 8);
        if (in && std::memcmp(magic, traj_bin_magic, 8) == 0) {
            std::uint64_t hlen = 0;
            in.read(reinterpret_cast<char*>(&hlen), sizeof(hlen));
            std::string hs(hlen, '\0');
            in.read(hs.data(), std::streamsize(hlen));
            if (!in) throw ValidationError(path + ": truncated header");
            json header = json::parse(hs);
            mdsim::Trajectory traj;
            traj.config = config_from_json(header.at("config"));
            traj.n_particles = header.at("n_particles").get<int>();
            traj.dimension = header.at("dimension").get<int>();
            traj.box_length = header.at("box_length").get<double>();
            const std::size_t ns = header.at("n_samples").get<std::size_t>();
            const std::size_t width = ns * traj.n_particles * traj.dimension;
            read_block(in, traj.times, ns);
            read_block(in, traj.velocities, width);
            if (header.at("has_positions").get<bool>()) read_block(in, traj.positions, width);
            if (header.at("has_energies").get<bool>()) {
                read_block(in, traj.local_potentials, ns * traj.n_particles);
                read_block(in, traj.kinetic_per_particle, ns * traj.n_particles);
            }
            return traj;
        }
    }

    std::ifstream in(path);
    std::string line;
    if (!std::getline(in, line) || trim(line) != traj_csv_magic)
        throw ValidationError(path + ": not a trajectory file");
    mdsim::Trajectory traj;
    bool have_config = false;
    std::vector<std::string> columns;
    while (std::getline(in, line)) {
        const std::string t = trim(line);
        if (t.empty()) continue;
        if (t[0] == '#') {
            const auto colon = t.find(':');
            if (colon == std::string::npos) continue;
            const std::string key = trim(t.substr(1, colon - 1));
            const std::string val = trim(t.substr(colon + 1));
            if (key == "config") {
                traj.config = config_from_json(json::parse(val));
                have_config = true;
            } else if (key == "box_length") {
                traj.box_length = std::stod(val);
            }
            continue;
        }
        std::stringstream ss(t);
        std::string cell;
        while (std::getline(ss, cell, ',')) columns.push_back(trim(cell));
        break;
    }
    if (!have_config || columns.size() < 3)
        throw ValidationError(path + ": missing config echo or column header");

    traj.n_particles = traj.config.n_particles;
    traj.dimension = traj.config.dimension;
    const int d = traj.dimension;
    const bool has_pos = std::find(columns.begin(), columns.end(), "x") != columns.end();
    const bool has_energy = std::find(columns.begin(), columns.end(), "V") != columns.end();
    const std::size_t expect_cols = 2 + d + (has_pos ? d : 0) + (has_energy ? 2 : 0);
    if (columns.size() != expect_cols)
        throw ValidationError(path + ": unexpected column count");

    std::vector<double> cells(expect_cols);
    long row = 0;
    while (std::getline(in, line)) {
        const std::string t = trim(line);
        if (t.empty()) continue;
        std::stringstream ss(t);
        std::string cell;
        std::size_t c = 0;
        while (std::getline(ss, cell, ',')) {
            if (c >= expect_cols) throw ValidationError(path + ": row with too many cells");
            cells[c++] = std::stod(cell);
        }
        if (c != expect_cols) throw ValidationError(path + ": short row");
        const int particle = int(cells[1]);
        if (particle != int(row % traj.n_particles))
            throw ValidationError(path + ": particle index out of order");
        if (particle == 0) traj.times.push_back(cells[0]);
        std::size_t k = 2;
        for (int j = 0; j < d; ++j) traj.velocities.push_back(cells[k++]);
        if (has_pos)
            for (int j = 0; j < d; ++j) traj.positions.push_back(cells[k++]);
        if (has_energy) {
            traj.local_potentials.push_back(cells[k++]);
            traj.kinetic_per_particle.push_back(cells[k++]);
        }
        ++row;
    }
    if (row == 0 || row % traj.n_particles != 0)
        throw ValidationError(path + ": incomplete sample block");
    return traj;
}

void write_vacf(const vacf::Vacf& v, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw ValidationError("cannot write " + path);
    json meta;
    meta["n_origins"] = v.n_origins;
    meta["per_component"] = v.per_component;
    meta["g0"] = v.g0;
    out << vacf_magic << "\n";
    out << "# meta: " << meta.dump() << "\n";
    out << "lag,value\n";
    for (std::size_t i = 0; i < v.lags.size(); ++i)
        out << fmt_full(v.lags[i]) << ',' << fmt_full(v.values[i]) << "\n";
}

vacf::Vacf read_vacf(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ValidationError("cannot open " + path);
    vacf::Vacf v;
    std::string line;
    bool header_seen = false;
    while (std::getline(in, line)) {
        const std::string t = trim(line);
        if (t.empty()) continue;
        if (t[0] == '#') {
            const auto colon = t.find(':');
            if (colon != std::string::npos && trim(t.substr(1, colon - 1)) == "meta") {
                json meta = json::parse(t.substr(colon + 1));
                if (meta.contains("n_origins")) v.n_origins = meta["n_origins"].get<long>();
                if (meta.contains("per_component"))
                    v.per_component = meta["per_component"].get<bool>();
            }
            continue;
        }
        if (!header_seen && t.find("lag") != std::string::npos) {
            header_seen = true;
            continue;
        }
        std::stringstream ss(t);
        std::string a, b;
        if (!std::getline(ss, a, ',') || !std::getline(ss, b, ','))
            throw ValidationError(path + ": expected 'lag,value' rows");
        try {
            v.lags.push_back(std::stod(a));
            v.values.push_back(std::stod(b));
        } catch (const std::exception&) {
            throw ValidationError(path + ": bad number in row '" + t + "'");
        }
    }
    if (v.lags.size() < 2) throw ValidationError(path + ": too few VACF rows");
    if (v.lags.front() != 0.0) throw ValidationError(path + ": lags must start at 0");
    for (std::size_t i = 1; i < v.lags.size(); ++i)
        if (!(v.lags[i] > v.lags[i - 1]))
            throw ValidationError(path + ": lags must increase strictly");
    v.g0 = v.values.front();
    if (!(v.g0 > 0.0)) throw ValidationError(path + ": G_v(0) must be positive");
    return v;
}

FileKind sniff_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ValidationError("cannot open " + path);
    char magic[8] = {};
    in.read(magic, 8);
    if (in && std::memcmp(magic, traj_bin_magic, 8) == 0) return FileKind::Trajectory;
    in.clear();
    in.seekg(0);
    std::string line;
    if (!std::getline(in, line)) return FileKind::Unknown;
    const std::string t = trim(line);
    if (t == traj_csv_magic) return FileKind::Trajectory;
    if (t == vacf_magic) return FileKind::VacfCurve;
    // External two-column files: treat CSV-looking content as a VACF curve.
    if (t.find(',') != std::string::npos) return FileKind::VacfCurve;
    return FileKind::Unknown;
}

//======================================================================
// key = value run configuration
//======================================================================

std::string KvFile::get(const std::string& key) const {
    auto it = values.find(key);
    if (it == values.end()) throw ValidationError("config: missing required key '" + key + "'");
    return it->second;
}

std::string KvFile::get_or(const std::string& key, const std::string& fallback) const {
    auto it = values.find(key);
    return it == values.end() ? fallback : it->second;
}

double KvFile::get_double(const std::string& key) const {
    const std::string v = get(key);
    try {
        return std::stod(v);
    } catch (const std::exception&) {
        throw ValidationError("config: key '" + key + "': bad number '" + v + "'");
    }
}

double KvFile::get_double_or(const std::string& key, double fallback) const {
    return has(key) ? get_double(key) : fallback;
}

long KvFile::get_long_or(const std::string& key, long fallback) const {
    if (!has(key)) return fallback;
    const std::string v = get(key);
    try {
        return std::stol(v);
    } catch (const std::exception&) {
        throw ValidationError("config: key '" + key + "': bad integer '" + v + "'");
    }
}

bool KvFile::get_bool_or(const std::string& key, bool fallback) const {
    if (!has(key)) return fallback;
    const std::string v = get(key);
    if (v == "true" || v == "1" || v == "yes") return true;
    if (v == "false" || v == "0" || v == "no") return false;
    throw ValidationError("config: key '" + key + "': bad boolean '" + v + "'");
}

KvFile parse_kv_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ValidationError("cannot open config: " + path);
    KvFile kv;
    std::string line;
    int line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        std::string t = trim(line);
        const auto hash = t.find('#');
        if (hash != std::string::npos) t = trim(t.substr(0, hash));
        if (t.empty()) continue;
        const auto eq = t.find('=');
        if (eq == std::string::npos)
            throw ValidationError(path + " line " + std::to_string(line_no) +
                                  ": expected 'key = value'");
        const std::string key = trim(t.substr(0, eq));
        const std::string val = trim(t.substr(eq + 1));
        if (key.empty() || val.empty())
            throw ValidationError(path + " line " + std::to_string(line_no) +
                                  ": empty key or value");
        if (kv.values.count(key))
            throw ValidationError(path + ": duplicate key '" + key + "'");
        kv.values[key] = val;
    }
    return kv;
}

SimConfigFromFile sim_config_from_kv(const KvFile& kv) {
    static const char* known[] = {
        "format_version", "system", "n_particles", "dimension", "density",
        "temperature", "dt", "n_equil", "n_prod", "sample_stride", "cutoff",
        "kappa", "coupling", "magnetic_field", "thermostat", "thermostat_interval",
        "friction", "seed", "record_positions", "record_energies"};
    for (const auto& [key, _] : kv.values)
        if (std::find_if(std::begin(known), std::end(known),
                         [&](const char* k) { return key == k; }) == std::end(known))
            throw ValidationError("config: unknown key '" + key + "'");

    if (kv.get_long_or("format_version", 1) != 1)
        throw ValidationError("config: format_version: only version 1 is supported");

    SimConfigFromFile out;
    mdsim::SimConfig& cfg = out.config;
    const std::string system = kv.get("system");
    if (system == "lj") {
        cfg.interaction = mdsim::LennardJones{kv.get_double_or("cutoff", 2.5)};
        cfg.dimension = int(kv.get_long_or("dimension", 3));
    } else if (system == "yukawa") {
        mdsim::Yukawa yk;
        yk.screening = kv.get_double_or("kappa", 2.0);
        yk.coupling = kv.get_double_or("coupling", 1.0);
        yk.magnetic_field = kv.get_double_or("magnetic_field", 0.0);
        yk.cutoff = kv.get_double_or("cutoff", 0.0);
        cfg.interaction = yk;
        cfg.dimension = int(kv.get_long_or("dimension", 2));
    } else {
        throw ValidationError("config: system: must be 'lj' or 'yukawa'");
    }
    cfg.n_particles = int(kv.get_long_or("n_particles", 864));
    cfg.number_density = kv.get_double("density");
    cfg.temperature = kv.get_double("temperature");
    cfg.dt = kv.get_double_or("dt", 0.005);
    cfg.n_equil_steps = kv.get_long_or("n_equil", 5000);
    cfg.n_prod_steps = kv.get_long_or("n_prod", 20000);
    cfg.sample_stride = int(kv.get_long_or("sample_stride", 5));
    const std::string th = kv.get_or("thermostat", "rescale");
    if (th == "rescale") cfg.thermostat.kind = mdsim::ThermostatKind::VelocityRescale;
    else if (th == "langevin") cfg.thermostat.kind = mdsim::ThermostatKind::Langevin;
    else if (th == "none") cfg.thermostat.kind = mdsim::ThermostatKind::None;
    else throw ValidationError("config: thermostat: must be rescale, langevin or none");
    cfg.thermostat.interval = int(kv.get_long_or("thermostat_interval", 10));
    cfg.thermostat.friction = kv.get_double_or("friction", 1.0);
    out.seed_defaulted = !kv.has("seed");
    cfg.seed = std::uint64_t(kv.get_long_or("seed", 0));
    cfg.record_positions = kv.get_bool_or("record_positions", false);
    cfg.record_energies = kv.get_bool_or("record_energies", true);
    cfg = mdsim::validate(cfg);
    return out;
}

std::uint64_t fnv1a64(const std::string& bytes) {
    std::uint64_t h = 1469598103934665603ull;
    for (unsigned char c : bytes) {
        h ^= c;
        h *= 1099511628211ull;
    }
    return h;
}

std::string file_digest(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ValidationError("cannot open " + path);
    std::stringstream ss;
    ss << in.rdbuf();
    char buf[32];
    std::snprintf(buf, sizeof(buf), "fnv1a64:%016llx",
                  static_cast<unsigned long long>(fnv1a64(ss.str())));
    return buf;
}

void write_manifest(const Manifest& m, const std::string& path) {
    json j;
    j["format_version"] = 1;
    j["command"] = m.command;
    j["config_digest"] = m.config_digest;
    j["constants_version"] = m.constants_version;
    j["seed"] = m.seed;
    j["seed_defaulted"] = m.seed_defaulted;
    j["outputs"] = m.outputs;
    j["duration_ms"] = m.duration_ms;
    std::ofstream out(path);
    if (!out) throw ValidationError("cannot write " + path);
    out << j.dump(2) << "\n";
}

} // namespace pbound::io
