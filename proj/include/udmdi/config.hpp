#pragma once

#include <iosfwd>
#include <map>
#include <string>

#include "udmdi/finite_size.hpp"
#include "udmdi/keyrate.hpp"

// Plain-text configuration: [section] headers with key = value lines,
// '#' comments, all values numeric except `scenario`. Unknown sections
// or keys are rejected so typos surface as configuration errors.

namespace udmdi::config {

using Table = std::map<std::string, std::map<std::string, std::string>>;

Table parse_stream(std::istream& in);
Table parse_file(const std::string& path);  // throws ConfigError

struct Loaded {
    keyrate::ProtocolConfig protocol;
    keyrate::Scenario scenario = keyrate::Scenario::symmetric;
    double distance_km = 0.0;
    double bob_side_efficiency = 0.98;  // applied in the asymmetric scenario
    finite_size::FiniteSizeConfig finite = finite_size::FiniteSizeConfig::half_split(1e9);

    /// Protocol configuration with the topology resolved from
    /// (scenario, distance).
    keyrate::ProtocolConfig resolved() const;
};

/// Assembles configs from a parsed table, applying defaults for
/// missing keys. Throws ConfigError on unknown or malformed entries.
Loaded load(const Table& table);

}  // namespace udmdi::config
