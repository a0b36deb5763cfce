#pragma once

#include <string>

#include "pdabc/greens.hpp"
#include "pdabc/kernel.hpp"
#include "pdabc/simulator.hpp"

namespace pdabc {

// Binary tables, native-endian doubles behind a (magic, version, K, J, dt)
// header. Kernel payload is laid out [m][n][j] on disk.
void save_greens(const GreensTable& gt, const std::string& path);
GreensTable load_greens(const std::string& path);

void save_kernels(const KernelTable& kt, const std::string& path);
KernelTable load_kernels(const std::string& path);

ScenarioConfig scenario_from_json(const std::string& text);
std::string scenario_to_json(const ScenarioConfig& cfg);
ScenarioConfig load_scenario(const std::string& path);

void write_snapshot_csv(const Snapshot& snap, const ScenarioConfig& cfg, const std::string& path);
void write_probes_csv(const ProbeSeries& probes, const std::string& path);

}  // namespace pdabc
