#pragma once

#include <string>
#include <vector>

#include "dsched/model.hpp"

namespace dsched {

// Version written by serialize_instance and accepted by the parser.
inline constexpr int kFormatVersion = 1;

struct ParseResult {
    Instance instance;  // as read from the file, not yet validated
    std::vector<std::string> errors;
    std::vector<std::string> warnings;

    bool ok() const { return errors.empty(); }
};

// Parses the line-oriented instance format:
//
//   dsched-instance
//   format_version 1
//   budget <float>
//   num_drones <int>
//   deliveries <count>
//   <id> <t_launch> <t_rendezvous> <cost> <profit>   (one row per delivery)
//
// Blank lines and lines starting with '#' are ignored. Unknown header keys
// are errors in strict mode and warnings otherwise; everything else that is
// malformed (bad magic, missing or duplicate keys, wrong row count, trailing
// content, unparseable numbers) is always an error.
ParseResult parse_instance_text(const std::string& text, bool strict = false);
ParseResult parse_instance_file(const std::string& path, bool strict = false);

// Shortest decimal form that round-trips through a double.
std::string format_double(double value);

std::string serialize_instance(const Instance& instance);

}  // namespace dsched
