#pragma once

#include <filesystem>
#include <string>
#include <string_view>

#include <nlohmann/json.hpp>

#include "subplanck/fock.hpp"
#include "subplanck/loci.hpp"
#include "subplanck/metrics.hpp"
#include "subplanck/oracle.hpp"
#include "subplanck/phase_space.hpp"
#include "subplanck/state.hpp"

namespace subplanck {

using Json = nlohmann::json;

/// Complex values are written as a number when real and [re, im] otherwise;
/// both forms are accepted on input.
Json complex_to_json(Complex z);
Complex complex_from_json(const Json& j, std::string_view field);

/// {cutoff, re[], im[], tail_mass}
Json to_json(const FockVector& psi);
FockVector fock_vector_from_json(const Json& j);

/// {family, alpha, beta, r, phi, l, n_add, n_sub}. Unknown keys are rejected;
/// missing keys keep their defaults.
Json to_json(const StateSpec& spec);
StateSpec state_spec_from_json(const Json& j);

Json to_json(const MetricReport& rep);
Json to_json(const FringeReport& rep);
Json to_json(const GridSpec& grid);
/// Overlays the keys of j on base; unknown keys rejected.
GridSpec grid_spec_from_json(const Json& j, GridSpec base);

Json to_json(const LocusConfig& cfg);
/// Overlays the keys of j on base; unknown keys rejected.
LocusConfig locus_config_from_json(const Json& j, LocusConfig base);
Json to_json(const LocusPoint& p);
Json to_json(const OracleReport& rep, bool include_samples = false);

/// Shortest-roundtrip-safe fixed format: 17 significant digits.
std::string format_double(double v);

/// x,p,value rows in row-major order.
std::string grid_csv(const PhaseGrid& grid);

void write_text(const std::filesystem::path& path, std::string_view content);
Json read_json(const std::filesystem::path& path);

/// 64-bit FNV-1a as 16 hex digits.
std::string fnv1a_hex(std::string_view data);

/// Rejects keys of j outside the allowed list.
void require_known_keys(const Json& j, std::initializer_list<std::string_view> allowed,
                        std::string_view what);

}  // namespace subplanck
