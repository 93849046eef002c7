#include <charconv>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <set>

#include "hyperseq/cli.hpp"
#include "hyperseq/errors.hpp"

namespace hyperseq::cli {
namespace {

std::string_view trim(std::string_view s) {
    const auto first = s.find_first_not_of(" \t\r");
    if (first == std::string_view::npos) return {};
    const auto last = s.find_last_not_of(" \t\r");
    return s.substr(first, last - first + 1);
}

std::string normalize_key(std::string_view key) {
    std::string out(key);
    for (char& c : out)
        if (c == '-') c = '_';
    return out;
}

long parse_long(std::string_view key, std::string_view text) {
    text = trim(text);
    long v = 0;
    const auto* end = text.data() + text.size();
    const auto [ptr, ec] = std::from_chars(text.data(), end, v);
    if (text.empty() || ec != std::errc() || ptr != end)
        throw ParseError(std::string(key) + ": expected an integer, got '" + std::string(text) + "'");
    return v;
}

double parse_double(std::string_view key, std::string_view text) {
    text = trim(text);
    double v = 0.0;
    const auto* end = text.data() + text.size();
    const auto [ptr, ec] = std::from_chars(text.data(), end, v);
    if (text.empty() || ec != std::errc() || ptr != end || !std::isfinite(v))
        throw ParseError(std::string(key) + ": expected a number, got '" + std::string(text) + "'");
    return v;
}

double parse_positive(std::string_view key, std::string_view text) {
    const double v = parse_double(key, text);
    if (!(v > 0.0)) throw ParseError(std::string(key) + ": must be > 0");
    return v;
}

std::vector<std::string_view> split_commas(std::string_view text) {
    std::vector<std::string_view> parts;
    while (true) {
        const auto comma = text.find(',');
        parts.push_back(trim(text.substr(0, comma)));
        if (comma == std::string_view::npos) break;
        text.remove_prefix(comma + 1);
    }
    return parts;
}

GridSpec parse_grid(std::string_view text) {
    text = trim(text);
    if (text.size() >= 2 && text.front() == '[' && text.back() == ']') text = text.substr(1, text.size() - 2);
    const auto parts = split_commas(text);
    if (parts.size() != 6) throw ParseError("grid: expected XMIN,XMAX,YMIN,YMAX,NX,NY");
    GridSpec g;
    g.x_min = parse_double("grid", parts[0]);
    g.x_max = parse_double("grid", parts[1]);
    g.y_min = parse_double("grid", parts[2]);
    g.y_max = parse_double("grid", parts[3]);
    const long nx = parse_long("grid", parts[4]);
    const long ny = parse_long("grid", parts[5]);
    if (nx > 20000 || ny > 20000) throw ParseError("grid: at most 20000 cells per side");
    g.nx = static_cast<int>(nx);
    g.ny = static_cast<int>(ny);
    try {
        g.validate();
    } catch (const PreconditionError& e) {
        throw ParseError(std::string("grid: ") + e.what());
    }
    return g;
}

RatPoly parse_coefficients(std::string_view key, std::string_view text) {
    try {
        return parse_poly(trim(text));
    } catch (const ParseError& e) {
        throw ParseError(std::string(key) + ": " + e.what());
    }
}

}  // namespace

SequenceSpec RunConfig::spec() const {
    if (!k) throw ParseError("missing k");
    if (!a) throw ParseError("missing A");
    if (!b) throw ParseError("missing B");
    return SequenceSpec(*k, *a, *b);
}

long RunConfig::require_n() const {
    if (!n) throw ParseError("missing n");
    return *n;
}

std::string RunConfig::canonical() const {
    std::ostringstream os;
    os << "k=" << (k ? std::to_string(*k) : "-") << ";A=" << (a ? to_list_string(*a) : "-")
       << ";B=" << (b ? to_list_string(*b) : "-") << ";n=" << (n ? std::to_string(*n) : "-") << ";n_max=" << n_max
       << ";grid=" << format_double(grid.x_min) << ',' << format_double(grid.x_max) << ','
       << format_double(grid.y_min) << ',' << format_double(grid.y_max) << ',' << grid.nx << ',' << grid.ny
       << ";tol=" << format_double(tol) << ";tau_real=" << format_double(tau_real) << ";form=" << to_string(form)
       << ";circle_radius=" << format_double(style.circle_radius) << ";dot_radius=" << format_double(style.dot_radius)
       << ";stroke_width=" << format_double(style.stroke_width) << ";width=" << style.width;
    return os.str();
}

void apply_setting(RunConfig& config, std::string_view raw_key, std::string_view value) {
    const std::string key = normalize_key(trim(raw_key));
    value = trim(value);
    if (key == "k") {
        const long k = parse_long(key, value);
        if (k < 3 || k > 1000) throw ParseError("k: must be in [3, 1000]");
        config.k = static_cast<int>(k);
    } else if (key == "A" || key == "a") {
        config.a = parse_coefficients("A", value);
    } else if (key == "B" || key == "b") {
        config.b = parse_coefficients("B", value);
    } else if (key == "n") {
        const long n = parse_long(key, value);
        if (n < 1) throw ParseError("n: must be >= 1");
        config.n = n;
    } else if (key == "n_max") {
        const long n = parse_long(key, value);
        if (n < 1) throw ParseError("n_max: must be >= 1");
        config.n_max = n;
    } else if (key == "grid") {
        config.grid = parse_grid(value);
    } else if (key == "tol") {
        config.tol = parse_positive(key, value);
    } else if (key == "tau_real") {
        config.tau_real = parse_positive(key, value);
    } else if (key == "out") {
        if (value.empty()) throw ParseError("out: empty path");
        config.out = std::string(value);
    } else if (key == "form") {
        try {
            config.form = parse_char_form(std::string(value));
        } catch (const ParseError&) {
            throw ParseError("form: expected paper-literal or recurrence-standard, got '" + std::string(value) + "'");
        }
    } else if (key == "circle_radius") {
        config.style.circle_radius = parse_positive(key, value);
    } else if (key == "dot_radius") {
        config.style.dot_radius = parse_positive(key, value);
    } else if (key == "stroke_width") {
        config.style.stroke_width = parse_positive(key, value);
    } else if (key == "width") {
        const long w = parse_long(key, value);
        if (w < 16 || w > 100000) throw ParseError("width: must be in [16, 100000]");
        config.style.width = static_cast<int>(w);
    } else {
        throw ParseError("unknown key '" + key + "'");
    }
}

RunConfig parse_config(std::string_view text, const std::string& origin) {
    RunConfig config;
    std::set<std::string> seen;
    std::size_t line_no = 0;
    while (!text.empty()) {
        ++line_no;
        const auto nl = text.find('\n');
        std::string_view line = text.substr(0, nl);
        text.remove_prefix(nl == std::string_view::npos ? text.size() : nl + 1);
        if (const auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
        line = trim(line);
        if (line.empty()) continue;
        const std::string where = origin + ":" + std::to_string(line_no) + ": ";
        const auto eq = line.find('=');
        if (eq == std::string_view::npos) throw ParseError(where + "expected 'key = value'");
        const std::string key = normalize_key(trim(line.substr(0, eq)));
        if (key.empty()) throw ParseError(where + "empty key");
        if (!seen.insert(key == "a" ? "A" : key == "b" ? "B" : key).second)
            throw ParseError(where + "duplicate key '" + key + "'");
        try {
            apply_setting(config, key, line.substr(eq + 1));
        } catch (const ParseError& e) {
            throw ParseError(where + e.what());
        }
    }
    return config;
}

RunConfig load_config(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ParseError(path.string() + ": cannot open");
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_config(buf.str(), path.string());
}

std::string fnv1a_hex(std::string_view data) {
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (unsigned char c : data) {
        h ^= c;
        h *= 0x100000001b3ULL;
    }
    char out[17];
    std::snprintf(out, sizeof out, "%016llx", static_cast<unsigned long long>(h));
    return out;
}

std::string format_double(double x) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
}

}  // namespace hyperseq::cli
