#include "sirsat/param_io.hpp"

#include <fstream>
#include <sstream>

namespace sirsat {

namespace {

std::string trim(const std::string& s) {
    const auto b = s.find_first_not_of(" \t\r\n");
    if (b == std::string::npos) return "";
    const auto e = s.find_last_not_of(" \t\r\n");
    return s.substr(b, e - b + 1);
}

const char* kKeys[] = {"b", "delta", "gamma", "q", "m_prime", "beta", "alpha", "beta2",
                       "alpha2"};

bool known_key(const std::string& k) {
    for (const char* key : kKeys) {
        if (k == key) return true;
    }
    return false;
}

}  // namespace

std::map<std::string, double> read_param_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ParamFileError("cannot open parameter file: " + path);
    std::map<std::string, double> out;
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        const auto hash = line.find('#');
        if (hash != std::string::npos) line = line.substr(0, hash);
        line = trim(line);
        if (line.empty()) continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos) {
            std::ostringstream os;
            os << path << ":" << lineno << ": expected `key = value`, got `" << line << "`";
            throw ParamFileError(os.str());
        }
        const std::string key = trim(line.substr(0, eq));
        const std::string val = trim(line.substr(eq + 1));
        if (!known_key(key)) {
            std::ostringstream os;
            os << path << ":" << lineno << ": unknown parameter `" << key << "`";
            throw ParamFileError(os.str());
        }
        std::size_t used = 0;
        double v = 0.0;
        try {
            v = std::stod(val, &used);
        } catch (const std::exception&) {
            used = 0;
        }
        if (used != val.size() || val.empty()) {
            std::ostringstream os;
            os << path << ":" << lineno << ": cannot parse value `" << val << "` for `"
               << key << "`";
            throw ParamFileError(os.str());
        }
        out[key] = v;
    }
    return out;
}

Params make_params(const std::map<std::string, double>& file_values,
                   const std::map<std::string, double>& overrides) {
    std::map<std::string, double> merged = file_values;
    for (const auto& [k, v] : overrides) merged[k] = v;
    for (const char* key : kKeys) {
        if (!merged.count(key)) {
            throw ParamFileError(std::string("missing parameter: ") + key);
        }
    }
    return Params(merged.at("b"), merged.at("delta"), merged.at("gamma"), merged.at("q"),
                  merged.at("m_prime"), merged.at("beta"), merged.at("alpha"),
                  merged.at("beta2"), merged.at("alpha2"));
}

}  // namespace sirsat
