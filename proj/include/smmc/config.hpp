#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

#include "smmc/engine.hpp"

namespace smmc {

/// A malformed or inconsistent user configuration; the CLI maps this to
/// exit code 2.
class ConfigError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Parse a flat key = value config (one pair per line, '#' comments).
/// Lengths accept nm/um/mm/cm/m suffixes, times accept ms/s; bare numbers
/// are SI. `snr` takes either a comma list ("0,5,10") or an inclusive range
/// "start:step:stop". Unknown keys and invalid values raise ConfigError
/// naming the offending key. Missing keys fall back to the defaults
/// described in the README.
RunConfig parse_config_text(std::string_view text);

/// Same, reading from a file. I/O failures raise ConfigError.
RunConfig parse_config_file(const std::string& path);

double parse_length(std::string_view value);  ///< meters
double parse_time(std::string_view value);    ///< seconds

}  // namespace smmc
