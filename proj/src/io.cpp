#include "dsched/io.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <map>
#include <sstream>

namespace dsched {

namespace {

constexpr const char* kMagic = "dsched-instance";

std::vector<std::string> tokenize(const std::string& line) {
    std::vector<std::string> tokens;
    std::istringstream in(line);
    std::string tok;
    while (in >> tok) tokens.push_back(tok);
    return tokens;
}

bool parse_double(const std::string& s, double& out) {
    const char* begin = s.data();
    const char* end = begin + s.size();
    auto [ptr, ec] = std::from_chars(begin, end, out);
    return ec == std::errc() && ptr == end;
}

bool parse_int(const std::string& s, long long& out) {
    const char* begin = s.data();
    const char* end = begin + s.size();
    auto [ptr, ec] = std::from_chars(begin, end, out);
    return ec == std::errc() && ptr == end;
}

std::string at_line(int line_no, const std::string& message) {
    return "line " + std::to_string(line_no) + ": " + message;
}

}  // namespace

ParseResult parse_instance_text(const std::string& text, bool strict) {
    ParseResult result;
    std::istringstream in(text);
    std::string line;
    int line_no = 0;

    bool saw_magic = false;
    std::map<std::string, double> header;
    long long declared = -1;
    long long rows_seen = 0;

    auto fail = [&](int ln, const std::string& msg) {
        result.errors.push_back(at_line(ln, msg));
    };

    while (std::getline(in, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        std::vector<std::string> tokens = tokenize(line);
        if (tokens.empty() || tokens[0][0] == '#') continue;

        if (!saw_magic) {
            if (tokens.size() != 1 || tokens[0] != kMagic) {
                fail(line_no, "expected magic line '" + std::string(kMagic) + "'");
                return result;
            }
            saw_magic = true;
            continue;
        }

        if (declared < 0) {
            // Header section: key value pairs until 'deliveries'.
            if (tokens.size() != 2) {
                fail(line_no, "expected 'key value' in header, got '" + line + "'");
                continue;
            }
            const std::string& key = tokens[0];
            if (key != "format_version" && key != "budget" &&
                key != "num_drones" && key != "deliveries") {
                std::string msg = at_line(line_no, "unknown header key '" + key + "'");
                if (strict) {
                    result.errors.push_back(msg);
                } else {
                    result.warnings.push_back(msg);
                }
                continue;
            }
            if (header.count(key)) {
                fail(line_no, "duplicate header key '" + key + "'");
                continue;
            }
            double value = 0.0;
            if (!parse_double(tokens[1], value)) {
                fail(line_no, "could not parse value for '" + key + "'");
                continue;
            }
            header[key] = value;
            if (key == "format_version" &&
                value != static_cast<double>(kFormatVersion)) {
                fail(line_no, "unsupported format_version " + tokens[1]);
            }
            if (key == "deliveries") {
                if (value < 0 || value != std::floor(value)) {
                    fail(line_no, "deliveries count must be a nonnegative integer");
                    return result;
                }
                declared = static_cast<long long>(value);
            }
            continue;
        }

        // Delivery rows.
        if (rows_seen == declared) {
            fail(line_no, "unexpected content after the last delivery row");
            continue;
        }
        if (tokens.size() != 5) {
            fail(line_no, "expected 5 fields 'id t_launch t_rendezvous cost profit'");
            ++rows_seen;
            continue;
        }
        long long id = 0;
        double values[4];
        bool row_ok = parse_int(tokens[0], id);
        for (int i = 0; i < 4; ++i) {
            row_ok = parse_double(tokens[i + 1], values[i]) && row_ok;
        }
        if (!row_ok) {
            fail(line_no, "could not parse delivery row");
            ++rows_seen;
            continue;
        }
        Delivery d;
        d.id = static_cast<int>(id);
        d.t_launch = values[0];
        d.t_rendezvous = values[1];
        d.cost = values[2];
        d.profit = values[3];
        result.instance.deliveries.push_back(d);
        ++rows_seen;
    }

    if (!saw_magic) {
        result.errors.push_back("empty input: expected magic line '" +
                                std::string(kMagic) + "'");
        return result;
    }
    for (const char* key : {"format_version", "budget", "num_drones"}) {
        if (!header.count(key)) {
            result.errors.push_back("missing header key '" + std::string(key) + "'");
        }
    }
    if (declared < 0) {
        result.errors.push_back("missing header key 'deliveries'");
    } else if (rows_seen != declared) {
        result.errors.push_back("expected " + std::to_string(declared) +
                                " delivery rows, found " + std::to_string(rows_seen));
    }

    result.instance.budget = header.count("budget") ? header["budget"] : 0.0;
    result.instance.num_drones =
        header.count("num_drones") ? static_cast<int>(header["num_drones"]) : 1;
    if (header.count("num_drones") &&
        header["num_drones"] != std::floor(header["num_drones"])) {
        result.errors.push_back("num_drones must be an integer");
    }
    return result;
}

ParseResult parse_instance_file(const std::string& path, bool strict) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        ParseResult result;
        result.errors.push_back("cannot open '" + path + "'");
        return result;
    }
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return parse_instance_text(buffer.str(), strict);
}

std::string format_double(double value) {
    char buf[64];
    auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), value);
    (void)ec;
    return std::string(buf, ptr);
}

std::string serialize_instance(const Instance& instance) {
    std::ostringstream out;
    out << kMagic << "\n";
    out << "format_version " << kFormatVersion << "\n";
    out << "budget " << format_double(instance.budget) << "\n";
    out << "num_drones " << instance.num_drones << "\n";
    out << "deliveries " << instance.deliveries.size() << "\n";
    for (const Delivery& d : instance.deliveries) {
        out << d.id << ' ' << format_double(d.t_launch) << ' '
            << format_double(d.t_rendezvous) << ' ' << format_double(d.cost)
            << ' ' << format_double(d.profit) << "\n";
    }
    return out.str();
}

}  // namespace dsched
