#include "udmdi/config.hpp"

#include <cstdlib>
#include <fstream>
#include <istream>
#include <set>
#include <sstream>

#include "udmdi/errors.hpp"

namespace udmdi::config {

namespace {

std::string trim(const std::string& s) {
    const auto begin = s.find_first_not_of(" \t\r");
    if (begin == std::string::npos) return {};
    const auto end = s.find_last_not_of(" \t\r");
    return s.substr(begin, end - begin + 1);
}

double to_double(const std::string& section, const std::string& key,
                 const std::string& value) {
    char* end = nullptr;
    const double parsed = std::strtod(value.c_str(), &end);
    if (end == value.c_str() || *end != '\0')
        throw ConfigError("[" + section + "] " + key + ": not a number: '" +
                          value + "'");
    return parsed;
}

const std::map<std::string, std::set<std::string>>& known_keys() {
    static const std::map<std::string, std::set<std::string>> keys = {
        {"protocol",
         {"modulation_variance", "beta", "excess_noise_a", "excess_noise_b",
          "attenuation_db_per_km", "bob_side_efficiency", "scenario",
          "distance_km"}},
        {"finite_size",
         {"block_length", "key_fraction", "eps_pe", "eps_pa", "eps_smooth"}},
        {"links",
         {"eta_a_x", "eta_b_x", "eta_a_p", "eta_b_p", "eps_a_x", "eps_b_x",
          "eps_a_p", "eps_b_p"}},
    };
    return keys;
}

}  // namespace

Table parse_stream(std::istream& in) {
    Table table;
    std::string line;
    std::string section;
    int line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        const auto comment = line.find('#');
        if (comment != std::string::npos) line.erase(comment);
        line = trim(line);
        if (line.empty()) continue;

        if (line.front() == '[') {
            if (line.back() != ']')
                throw ConfigError("line " + std::to_string(line_no) +
                                  ": malformed section header");
            section = trim(line.substr(1, line.size() - 2));
            if (!known_keys().count(section))
                throw ConfigError("line " + std::to_string(line_no) +
                                  ": unknown section [" + section + "]");
            table[section];
            continue;
        }

        const auto eq = line.find('=');
        if (eq == std::string::npos || section.empty())
            throw ConfigError("line " + std::to_string(line_no) +
                              ": expected 'key = value' inside a section");
        const std::string key = trim(line.substr(0, eq));
        const std::string value = trim(line.substr(eq + 1));
        if (!known_keys().at(section).count(key))
            throw ConfigError("line " + std::to_string(line_no) +
                              ": unknown key '" + key + "' in [" + section + "]");
        table[section][key] = value;
    }
    return table;
}

Table parse_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open config file: " + path);
    return parse_stream(in);
}

keyrate::ProtocolConfig Loaded::resolved() const {
    keyrate::ProtocolConfig cfg = protocol;
    if (!cfg.links_override) {
        cfg.topology =
            keyrate::topology_for(scenario, distance_km,
                                  protocol.topology.alpha_db_per_km,
                                  bob_side_efficiency);
    }
    return cfg;
}

Loaded load(const Table& table) {
    Loaded loaded;

    auto section_get = [&table](const std::string& section,
                                const std::string& key) {
        const auto sec = table.find(section);
        if (sec == table.end()) return std::string();
        const auto entry = sec->second.find(key);
        if (entry == sec->second.end()) return std::string();
        return entry->second;
    };
    auto get_number = [&](const std::string& section, const std::string& key,
                          double fallback) {
        const std::string value = section_get(section, key);
        if (value.empty()) return fallback;
        return to_double(section, key, value);
    };

    loaded.protocol.v_m = get_number("protocol", "modulation_variance", 100.0);
    loaded.protocol.beta = get_number("protocol", "beta", 0.98);
    loaded.protocol.eps_a = get_number("protocol", "excess_noise_a", 0.002);
    loaded.protocol.eps_b = get_number("protocol", "excess_noise_b", 0.002);
    loaded.protocol.topology.alpha_db_per_km =
        get_number("protocol", "attenuation_db_per_km", 0.2);
    loaded.bob_side_efficiency =
        get_number("protocol", "bob_side_efficiency", 0.98);
    loaded.distance_km = get_number("protocol", "distance_km", 0.0);

    const std::string scenario = section_get("protocol", "scenario");
    if (scenario == "asymmetric")
        loaded.scenario = keyrate::Scenario::asymmetric;
    else if (scenario == "symmetric" || scenario.empty())
        loaded.scenario = keyrate::Scenario::symmetric;
    else
        throw ConfigError("scenario must be 'symmetric' or 'asymmetric', got '" +
                          scenario + "'");

    const double block = get_number("finite_size", "block_length", 1e9);
    const double fraction = get_number("finite_size", "key_fraction", 0.5);
    if (!(fraction > 0.0) || !(fraction < 1.0))
        throw ConfigError("key_fraction must lie in (0,1)");
    loaded.finite.n_total = block;
    loaded.finite.n_key = fraction * block;
    loaded.finite.eps_pe = get_number("finite_size", "eps_pe", 1e-10);
    loaded.finite.eps_pa = get_number("finite_size", "eps_pa", 1e-10);
    loaded.finite.eps_smooth = get_number("finite_size", "eps_smooth", 1e-10);

    if (table.count("links")) {
        auto need = [&](const std::string& key) {
            const std::string value = section_get("links", key);
            if (value.empty())
                throw ConfigError("[links] requires " + key +
                                  " (x-quadrature entries are mandatory)");
            return to_double("links", key, value);
        };
        const double eta_a_x = need("eta_a_x");
        const double eta_b_x = need("eta_b_x");
        const double eps_a_x = need("eps_a_x");
        const double eps_b_x = need("eps_b_x");
        channel::LinkParams links = channel::LinkParams::symmetric_quadratures(
            eta_a_x, eps_a_x, eta_b_x, eps_b_x);
        links.eta_a_p = get_number("links", "eta_a_p", links.eta_a_p);
        links.eta_b_p = get_number("links", "eta_b_p", links.eta_b_p);
        links.eps_a_p = get_number("links", "eps_a_p", links.eps_a_p);
        links.eps_b_p = get_number("links", "eps_b_p", links.eps_b_p);
        loaded.protocol.links_override = links;
    }

    return loaded;
}

}  // namespace udmdi::config
