#include "levycond/config.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstdlib>

#include "levycond/experiments.hpp"

namespace levycond {

namespace {

std::string trim(const std::string& s) {
    const auto begin = s.find_first_not_of(" \t\r");
    if (begin == std::string::npos) return "";
    const auto end = s.find_last_not_of(" \t\r");
    return s.substr(begin, end - begin + 1);
}

struct Parser {
    std::vector<std::string>& errors;

    bool parse_double(const std::string& value, const std::string& key, double& out) const {
        char* end = nullptr;
        const double v = std::strtod(value.c_str(), &end);
        if (end == value.c_str() || *end != '\0') {
            errors.push_back("invalid number for " + key + ": '" + value + "'");
            return false;
        }
        out = v;
        return true;
    }

    bool parse_u64(const std::string& value, const std::string& key, std::uint64_t& out) const {
        char* end = nullptr;
        const unsigned long long v = std::strtoull(value.c_str(), &end, 10);
        if (end == value.c_str() || *end != '\0') {
            errors.push_back("invalid integer for " + key + ": '" + value + "'");
            return false;
        }
        out = v;
        return true;
    }

    bool parse_bool(const std::string& value, const std::string& key, bool& out) const {
        if (value == "true" || value == "1") {
            out = true;
            return true;
        }
        if (value == "false" || value == "0") {
            out = false;
            return true;
        }
        errors.push_back("invalid boolean for " + key + ": '" + value + "'");
        return false;
    }
};

}  // namespace

const std::vector<std::string>& known_run_targets() {
    static const std::vector<std::string> targets = [] {
        std::vector<std::string> t = experiment_ids();
        t.push_back("simulate");
        t.push_back("resolvent");
        return t;
    }();
    return targets;
}

ParseResult parse_config(const std::string& text) {
    ParseResult result;
    RunConfig config;
    std::vector<std::string>& errors = result.errors;
    Parser parser{errors};

    std::string section = "run";
    std::size_t pos = 0;
    while (pos <= text.size()) {
        const std::size_t nl = text.find('\n', pos);
        std::string line = trim(nl == std::string::npos ? text.substr(pos)
                                                        : text.substr(pos, nl - pos));
        pos = nl == std::string::npos ? text.size() + 1 : nl + 1;
        if (line.empty() || line[0] == '#' || line[0] == ';') continue;
        if (line.front() == '[' && line.back() == ']') {
            section = trim(line.substr(1, line.size() - 2));
            if (section != "run" && section != "params" && section != "budgets" &&
                section != "simulate")
                errors.push_back("unknown section [" + section + "]");
            continue;
        }
        const std::size_t eq = line.find('=');
        if (eq == std::string::npos) {
            errors.push_back("malformed line (expected key = value): '" + line + "'");
            continue;
        }
        const std::string key = trim(line.substr(0, eq));
        const std::string value = trim(line.substr(eq + 1));
        const std::string qualified = section + "." + key;

        if (qualified == "run.experiment") {
            config.experiment = value;
        } else if (qualified == "run.seed") {
            parser.parse_u64(value, qualified, config.seed);
        } else if (qualified == "run.chunks") {
            std::uint64_t v = 0;
            if (parser.parse_u64(value, qualified, v)) config.chunks = static_cast<unsigned>(v);
        } else if (qualified == "run.quick") {
            parser.parse_bool(value, qualified, config.quick);
        } else if (qualified == "run.out") {
            config.out_dir = value;
        } else if (qualified == "params.alpha") {
            parser.parse_double(value, qualified, config.alpha);
        } else if (qualified == "params.rho") {
            parser.parse_double(value, qualified, config.rho);
        } else if (qualified == "params.symmetric") {
            parser.parse_bool(value, qualified, config.symmetric);
        } else if (qualified == "params.kind") {
            config.kind = value;
        } else if (qualified == "budgets.n") {
            parser.parse_u64(value, qualified, config.n);
        } else if (qualified == "budgets.eps_hit_coeff") {
            parser.parse_double(value, qualified, config.eps_hit_coeff);
        } else if (qualified == "simulate.x0") {
            parser.parse_double(value, qualified, config.x0);
        } else if (qualified == "simulate.t_max") {
            parser.parse_double(value, qualified, config.t_max);
        } else if (qualified == "simulate.dt") {
            parser.parse_double(value, qualified, config.dt);
        } else {
            errors.push_back("unknown key '" + qualified + "'");
        }
    }

    // domain validation: every violation is reported
    const auto& targets = known_run_targets();
    if (std::find(targets.begin(), targets.end(), config.experiment) == targets.end())
        errors.push_back("unknown experiment '" + config.experiment + "'");
    if (config.symmetric && config.rho != 0.5)
        errors.push_back("symmetric = true forces rho = 0.5");
    if (!(config.alpha > 0.0 && config.alpha <= 2.0)) {
        errors.push_back("alpha must lie in (0,2]");
    } else if (config.alpha < 1.0 && (config.rho == 0.0 || config.rho == 1.0)) {
        errors.push_back("subordinator case excluded (alpha < 1 with rho in {0,1})");
    } else if (config.alpha == 1.0 && !(config.rho > 0.0 && config.rho < 1.0)) {
        errors.push_back("alpha = 1 requires rho in (0,1)");
    } else if (config.alpha > 1.0 &&
               !(config.rho >= 1.0 - 1.0 / config.alpha - 1e-12 &&
                 config.rho <= 1.0 / config.alpha + 1e-12)) {
        errors.push_back("rho must lie in [1-1/alpha, 1/alpha] for alpha in (1,2]");
    }
    if (config.kind != "both" && config.kind != "stay-positive" && config.kind != "avoid-origin")
        errors.push_back("kind must be both, stay-positive or avoid-origin");
    if (config.kind == "avoid-origin") {
        if (!(config.alpha > 1.0 && config.alpha <= 2.0))
            errors.push_back("avoid-origin conditioning requires 1 < alpha <= 2");
        if (!config.symmetric) errors.push_back("avoid-origin conditioning requires symmetric = true");
    }
    if (config.chunks == 0) errors.push_back("chunks must be >= 1");
    if (!(config.eps_hit_coeff > 0.0)) errors.push_back("eps_hit_coeff must be positive");
    if (!(config.dt > 0.0)) errors.push_back("simulate.dt must be positive");
    if (!(config.t_max > 0.0)) errors.push_back("simulate.t_max must be positive");
    if (config.out_dir.empty()) errors.push_back("run.out must not be empty");

    if (errors.empty()) result.config = config;
    return result;
}

std::string serialize_config(const RunConfig& config) {
    char buf[64];
    auto num = [&buf](double v) {
        std::snprintf(buf, sizeof(buf), "%.17g", v);
        return std::string(buf);
    };
    std::string out;
    out += "[run]\n";
    out += "experiment = " + config.experiment + "\n";
    out += "seed = " + std::to_string(config.seed) + "\n";
    out += "chunks = " + std::to_string(config.chunks) + "\n";
    out += std::string("quick = ") + (config.quick ? "true" : "false") + "\n";
    out += "out = " + config.out_dir + "\n";
    out += "[params]\n";
    out += "alpha = " + num(config.alpha) + "\n";
    out += "rho = " + num(config.rho) + "\n";
    out += std::string("symmetric = ") + (config.symmetric ? "true" : "false") + "\n";
    out += "kind = " + config.kind + "\n";
    out += "[budgets]\n";
    out += "n = " + std::to_string(config.n) + "\n";
    out += "eps_hit_coeff = " + num(config.eps_hit_coeff) + "\n";
    out += "[simulate]\n";
    out += "x0 = " + num(config.x0) + "\n";
    out += "t_max = " + num(config.t_max) + "\n";
    out += "dt = " + num(config.dt) + "\n";
    return out;
}

}  // namespace levycond
