#ifndef PBOUND_IO_HPP
#define PBOUND_IO_HPP

#include "pbound/mdsim.hpp"
#include "pbound/vacf.hpp"

#include <cstdint>
#include <map>
#include <string>
#include <vector>

namespace pbound::io {

// Trajectory interchange (formats documented in the README):
//   CSV    "# pbound-trajectory v1" + config echo + column header + rows
//   binary "PBTRJB1\n" + JSON header + little-endian double blocks
enum class TrajFormat { Csv, Binary };

void write_trajectory(const mdsim::Trajectory& traj, const std::string& path,
                      TrajFormat format);
mdsim::Trajectory read_trajectory(const std::string& path);

// VACF interchange: "# pbound-vacf v1" + meta JSON + "lag,value" rows.
// Plain two-column CSVs from external sources load as well.
void write_vacf(const vacf::Vacf& v, const std::string& path);
vacf::Vacf read_vacf(const std::string& path);

enum class FileKind { Trajectory, VacfCurve, Unknown };
FileKind sniff_file(const std::string& path);

// One-document key = value run configuration.
struct KvFile {
    std::map<std::string, std::string> values;
    bool has(const std::string& key) const { return values.count(key) != 0; }
    std::string get(const std::string& key) const;
    std::string get_or(const std::string& key, const std::string& fallback) const;
    double get_double(const std::string& key) const;
    double get_double_or(const std::string& key, double fallback) const;
    long get_long_or(const std::string& key, long fallback) const;
    bool get_bool_or(const std::string& key, bool fallback) const;
};

KvFile parse_kv_file(const std::string& path);

// Simulation config schema (applies defaults, validates field by field).
struct SimConfigFromFile {
    mdsim::SimConfig config;
    bool seed_defaulted = false;
};
SimConfigFromFile sim_config_from_kv(const KvFile& kv);

std::uint64_t fnv1a64(const std::string& bytes);
std::string file_digest(const std::string& path);

struct Manifest {
    std::string command;
    std::string config_digest;
    std::string constants_version;
    std::uint64_t seed = 0;
    bool seed_defaulted = false;
    std::vector<std::string> outputs;
    double duration_ms = 0.0;
};

void write_manifest(const Manifest& m, const std::string& path);

} // namespace pbound::io

#endif
