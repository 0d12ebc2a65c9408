#pragma once

#include <map>
#include <optional>
#include <string>

#include "sirsat/model.hpp"

namespace sirsat {

class ParamFileError : public std::runtime_error {
public:
    explicit ParamFileError(const std::string& what) : std::runtime_error(what) {}
};

// Flat `key = value` file, one pair per line, '#' comments.  Keys are exactly
// the nine parameter names.  Unknown keys and malformed lines are errors.
std::map<std::string, double> read_param_file(const std::string& path);

// Builds Params from file values overlaid with command-line overrides.
// Missing parameters raise ParamFileError naming the first absent key.
Params make_params(const std::map<std::string, double>& file_values,
                   const std::map<std::string, double>& overrides);

}  // namespace sirsat
