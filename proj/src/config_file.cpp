#include "irsoff/config_file.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include "irsoff/csv.hpp"

namespace irsoff {

namespace {

std::string trim(const std::string& s) {
    size_t b = s.find_first_not_of(" \t\r\n");
    if (b == std::string::npos) return "";
    size_t e = s.find_last_not_of(" \t\r\n");
    return s.substr(b, e - b + 1);
}

double parse_double(const std::string& key, const std::string& value) {
    try {
        size_t pos = 0;
        double v = std::stod(value, &pos);
        if (pos != value.size()) throw std::invalid_argument("");
        return v;
    } catch (...) {
        throw std::invalid_argument("config key '" + key + "': cannot parse number '" + value + "'");
    }
}

long long parse_int(const std::string& key, const std::string& value) {
    try {
        size_t pos = 0;
        long long v = std::stoll(value, &pos);
        if (pos != value.size()) throw std::invalid_argument("");
        return v;
    } catch (...) {
        throw std::invalid_argument("config key '" + key + "': cannot parse integer '" + value + "'");
    }
}

bool parse_bool(const std::string& key, const std::string& value) {
    if (value == "true" || value == "1" || value == "yes" || value == "on") return true;
    if (value == "false" || value == "0" || value == "no" || value == "off") return false;
    throw std::invalid_argument("config key '" + key + "': cannot parse boolean '" + value + "'");
}

}  // namespace

std::map<std::string, std::string> parse_ini(const std::string& text) {
    std::map<std::string, std::string> out;
    std::istringstream in(text);
    std::string line, section;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        // strip comments
        size_t hash = line.find_first_of("#;");
        if (hash != std::string::npos) line = line.substr(0, hash);
        line = trim(line);
        if (line.empty()) continue;
        if (line.front() == '[') {
            if (line.back() != ']')
                throw std::invalid_argument("config line " + std::to_string(lineno) +
                                            ": malformed section header");
            section = trim(line.substr(1, line.size() - 2));
            continue;
        }
        size_t eq = line.find('=');
        if (eq == std::string::npos)
            throw std::invalid_argument("config line " + std::to_string(lineno) +
                                        ": expected key = value");
        std::string key = trim(line.substr(0, eq));
        std::string value = trim(line.substr(eq + 1));
        if (key.empty())
            throw std::invalid_argument("config line " + std::to_string(lineno) + ": empty key");
        out[section.empty() ? key : section + "." + key] = value;
    }
    return out;
}

std::map<std::string, std::string> parse_ini_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open config file: " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return parse_ini(ss.str());
}

void apply_entry(ScenarioConfig& cfg, const std::string& key, const std::string& value) {
    // scenario
    if (key == "scenario.num_task_users") cfg.num_task_users = static_cast<int>(parse_int(key, value));
    else if (key == "scenario.num_helpers") cfg.num_helpers = static_cast<int>(parse_int(key, value));
    else if (key == "scenario.num_elements") cfg.num_elements = static_cast<int>(parse_int(key, value));
    else if (key == "scenario.slots_per_frame") cfg.slots_per_frame = static_cast<int>(parse_int(key, value));
    else if (key == "scenario.frames") cfg.frames = static_cast<int>(parse_int(key, value));
    else if (key == "scenario.bandwidth_hz") cfg.bandwidth_hz = parse_double(key, value);
    else if (key == "scenario.tx_power_dbm") cfg.tx_power_w = dbm_to_watts(parse_double(key, value));
    else if (key == "scenario.tx_power_w") cfg.tx_power_w = parse_double(key, value);
    else if (key == "scenario.noise_dbm_per_hz") cfg.noise_density_w_per_hz = dbm_to_watts(parse_double(key, value));
    else if (key == "scenario.noise_density_w_per_hz") cfg.noise_density_w_per_hz = parse_double(key, value);
    else if (key == "scenario.task_circle_x") cfg.task_circle_x = parse_double(key, value);
    else if (key == "scenario.task_circle_y") cfg.task_circle_y = parse_double(key, value);
    else if (key == "scenario.task_circle_radius") cfg.task_circle_radius = parse_double(key, value);
    else if (key == "scenario.helper_circle_x") cfg.helper_circle_x = parse_double(key, value);
    else if (key == "scenario.helper_circle_y") cfg.helper_circle_y = parse_double(key, value);
    else if (key == "scenario.helper_circle_radius") cfg.helper_circle_radius = parse_double(key, value);
    else if (key == "scenario.irs_x") cfg.irs_x = parse_double(key, value);
    else if (key == "scenario.irs_y") cfg.irs_y = parse_double(key, value);
    else if (key == "scenario.irs_height") cfg.irs_height = parse_double(key, value);
    else if (key == "scenario.user_height") cfg.user_height = parse_double(key, value);
    else if (key == "scenario.task_bits_min") cfg.task_bits_min = parse_double(key, value);
    else if (key == "scenario.task_bits_max") cfg.task_bits_max = parse_double(key, value);
    else if (key == "scenario.cycles_per_bit") cfg.cycles_per_bit = parse_double(key, value);
    else if (key == "scenario.task_user_cpu_hz") cfg.task_user_cpu_hz = parse_double(key, value);
    else if (key == "scenario.helper_cpu_min_hz") cfg.helper_cpu_min_hz = parse_double(key, value);
    else if (key == "scenario.helper_cpu_max_hz") cfg.helper_cpu_max_hz = parse_double(key, value);
    else if (key == "scenario.weight") cfg.weight = parse_double(key, value);
    else if (key == "scenario.seed") cfg.rng_seed = static_cast<std::uint64_t>(parse_int(key, value));
    // channel
    else if (key == "channel.rician_factor_db") cfg.rician_factor = db_to_linear(parse_double(key, value));
    else if (key == "channel.rician_factor") cfg.rician_factor = parse_double(key, value);
    else if (key == "channel.pathloss_ref_db") cfg.pathloss_ref = db_to_linear(parse_double(key, value));
    else if (key == "channel.pathloss_ref") cfg.pathloss_ref = parse_double(key, value);
    else if (key == "channel.ref_distance_m") cfg.ref_distance_m = parse_double(key, value);
    else if (key == "channel.exponent_uu") cfg.exponent_uu = parse_double(key, value);
    else if (key == "channel.exponent_ui") cfg.exponent_ui = parse_double(key, value);
    else if (key == "channel.los_mode") {
        if (value == "ula") cfg.los_mode = LosMode::Ula;
        else if (value == "ones") cfg.los_mode = LosMode::Ones;
        else throw std::invalid_argument("channel.los_mode must be 'ula' or 'ones', got '" + value + "'");
    } else if (key == "channel.direct_fading") {
        if (value == "rician") cfg.direct_fading = DirectFading::Rician;
        else if (value == "rayleigh") cfg.direct_fading = DirectFading::Rayleigh;
        else throw std::invalid_argument("channel.direct_fading must be 'rician' or 'rayleigh', got '" + value + "'");
    }
    // ssca
    else if (key == "ssca.varpi") cfg.ssca.varpi = parse_double(key, value);
    else if (key == "ssca.rho_exponent") cfg.ssca.rho_exponent = parse_double(key, value);
    else if (key == "ssca.gamma_exponent") cfg.ssca.gamma_exponent = parse_double(key, value);
    else if (key == "ssca.auto_varpi") cfg.ssca.auto_varpi = parse_bool(key, value);
    else if (key == "ssca.auto_varpi_step_rad") cfg.ssca.auto_varpi_step_rad = parse_double(key, value);
    // sts
    else if (key == "sts.max_iters") cfg.sts.max_iters = static_cast<int>(parse_int(key, value));
    else if (key == "sts.tol") cfg.sts.tol = parse_double(key, value);
    else if (key == "sts.init_step_rad") cfg.sts.init_step_rad = parse_double(key, value);
    // run
    else if (key == "run.trials") cfg.trials = static_cast<int>(parse_int(key, value));
    else if (key == "run.bits_per_coefficient") cfg.bits_per_coefficient = static_cast<int>(parse_int(key, value));
    else if (key == "run.parallel") cfg.parallel = parse_bool(key, value);
    else throw std::invalid_argument("unknown config key '" + key + "'");
}

ScenarioConfig load_config(const std::string& path) {
    ScenarioConfig cfg;
    for (const auto& [key, value] : parse_ini_file(path)) {
        apply_entry(cfg, key, value);
    }
    return validate(cfg);
}

ScenarioConfig apply_overrides(ScenarioConfig cfg, const std::vector<std::string>& entries) {
    for (const auto& entry : entries) {
        size_t eq = entry.find('=');
        if (eq == std::string::npos)
            throw std::invalid_argument("override must look like section.key=value, got '" + entry + "'");
        apply_entry(cfg, trim(entry.substr(0, eq)), trim(entry.substr(eq + 1)));
    }
    return validate(cfg);
}

std::string dump_config(const ScenarioConfig& cfg) {
    std::ostringstream os;
    auto kv = [&os](const char* key, const std::string& value) { os << key << " = " << value << "\n"; };
    auto kvd = [&](const char* key, double v) { kv(key, format_double(v)); };
    auto kvi = [&](const char* key, long long v) { kv(key, std::to_string(v)); };
    auto kvb = [&](const char* key, bool v) { kv(key, v ? "true" : "false"); };

    kvi("scenario.num_task_users", cfg.num_task_users);
    kvi("scenario.num_helpers", cfg.num_helpers);
    kvi("scenario.num_elements", cfg.num_elements);
    kvi("scenario.slots_per_frame", cfg.slots_per_frame);
    kvi("scenario.frames", cfg.frames);
    kvd("scenario.bandwidth_hz", cfg.bandwidth_hz);
    kvd("scenario.tx_power_w", cfg.tx_power_w);
    kvd("scenario.noise_density_w_per_hz", cfg.noise_density_w_per_hz);
    kvd("scenario.task_circle_x", cfg.task_circle_x);
    kvd("scenario.task_circle_y", cfg.task_circle_y);
    kvd("scenario.task_circle_radius", cfg.task_circle_radius);
    kvd("scenario.helper_circle_x", cfg.helper_circle_x);
    kvd("scenario.helper_circle_y", cfg.helper_circle_y);
    kvd("scenario.helper_circle_radius", cfg.helper_circle_radius);
    kvd("scenario.irs_x", cfg.irs_x);
    kvd("scenario.irs_y", cfg.irs_y);
    kvd("scenario.irs_height", cfg.irs_height);
    kvd("scenario.user_height", cfg.user_height);
    kvd("scenario.task_bits_min", cfg.task_bits_min);
    kvd("scenario.task_bits_max", cfg.task_bits_max);
    kvd("scenario.cycles_per_bit", cfg.cycles_per_bit);
    kvd("scenario.task_user_cpu_hz", cfg.task_user_cpu_hz);
    kvd("scenario.helper_cpu_min_hz", cfg.helper_cpu_min_hz);
    kvd("scenario.helper_cpu_max_hz", cfg.helper_cpu_max_hz);
    kvd("scenario.weight", cfg.weight);
    kvi("scenario.seed", static_cast<long long>(cfg.rng_seed));
    kvd("channel.rician_factor", cfg.rician_factor);
    kvd("channel.pathloss_ref", cfg.pathloss_ref);
    kvd("channel.ref_distance_m", cfg.ref_distance_m);
    kvd("channel.exponent_uu", cfg.exponent_uu);
    kvd("channel.exponent_ui", cfg.exponent_ui);
    kv("channel.los_mode", cfg.los_mode == LosMode::Ula ? "ula" : "ones");
    kv("channel.direct_fading", cfg.direct_fading == DirectFading::Rician ? "rician" : "rayleigh");
    kvd("ssca.varpi", cfg.ssca.varpi);
    kvd("ssca.rho_exponent", cfg.ssca.rho_exponent);
    kvd("ssca.gamma_exponent", cfg.ssca.gamma_exponent);
    kvb("ssca.auto_varpi", cfg.ssca.auto_varpi);
    kvd("ssca.auto_varpi_step_rad", cfg.ssca.auto_varpi_step_rad);
    kvi("sts.max_iters", cfg.sts.max_iters);
    kvd("sts.tol", cfg.sts.tol);
    kvd("sts.init_step_rad", cfg.sts.init_step_rad);
    kvi("run.trials", cfg.trials);
    kvi("run.bits_per_coefficient", cfg.bits_per_coefficient);
    kvb("run.parallel", cfg.parallel);
    return os.str();
}

}  // namespace irsoff
