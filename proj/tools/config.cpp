#include "config.hpp"

#include <fstream>
#include <set>
#include <sstream>

namespace yangian::cli {

namespace {

std::string trim(const std::string& s) {
    auto b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos) return "";
    auto e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

Rational rational(const std::string& key, const std::string& v) {
    try {
        return Rational::parse(trim(v));
    } catch (const std::exception&) {
        throw ConfigError(key + ": expected a rational p/q, got '" + v + "'");
    }
}

int integer(const std::string& key, const std::string& v) {
    Rational r = rational(key, v);
    if (!r.is_integer()) throw ConfigError(key + ": expected an integer, got '" + v + "'");
    return static_cast<int>(r.to_long());
}

const std::map<std::string, std::string>& section_of() {
    static const std::map<std::string, std::string> m{
        {"N", "algebra"},      {"k", "algebra"},        {"hbar", "algebra"},    {"variant", "algebra"},
        {"en-reading", "algebra"}, {"L", "oracle"},     {"window", "oracle"},   {"bra-level", "oracle"},
        {"suite", "run"},      {"relations", "run"},    {"seed", "run"},        {"threads", "run"},
        {"report", "run"}};
    return m;
}

}  // namespace

std::vector<std::string> split_list(const std::string& text) {
    std::vector<std::string> out;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        item = trim(item);
        if (!item.empty()) out.push_back(item);
    }
    return out;
}

Window parse_window(const std::string& text) {
    auto p = text.find(':');
    if (p == std::string::npos) throw ConfigError("window: expected lo:hi, got '" + text + "'");
    Window w{rational("window", text.substr(0, p)), rational("window", text.substr(p + 1))};
    if (w.hi < w.lo) throw ConfigError("window: lo exceeds hi");
    return w;
}

std::map<std::string, std::string> read_config_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot read config file " + path);
    std::map<std::string, std::string> kv;
    std::string line, section;
    int n = 0;
    while (std::getline(in, line)) {
        ++n;
        if (auto h = line.find('#'); h != std::string::npos) line.resize(h);
        line = trim(line);
        if (line.empty()) continue;
        if (line.front() == '[') {
            if (line.back() != ']') throw ConfigError(path + ":" + std::to_string(n) + ": bad section header");
            section = trim(line.substr(1, line.size() - 2));
            continue;
        }
        auto eq = line.find('=');
        if (eq == std::string::npos) throw ConfigError(path + ":" + std::to_string(n) + ": expected key = value");
        std::string key = trim(line.substr(0, eq));
        kv[section.empty() ? key : section + "." + key] = trim(line.substr(eq + 1));
    }
    return kv;
}

void apply_key(RunConfig& rc, const std::string& key, const std::string& value) {
    OracleConfig& o = rc.oracle;
    if (key == "N") {
        o.N = integer(key, value);
        if (o.N < 2) throw ConfigError("N must be at least 2");
    } else if (key == "k") {
        o.k = rational(key, value);
    } else if (key == "hbar") {
        o.hbar = rational(key, value);
        if (o.hbar.is_zero()) throw ConfigError("hbar must be nonzero");
    } else if (key == "L") {
        o.L = integer(key, value);
        if (o.L < 1) throw ConfigError("L must be positive");
    } else if (key == "window") {
        o.window = parse_window(value);
    } else if (key == "bra-level") {
        o.bra_level = integer(key, value);
    } else if (key == "variant") {
        if (value == "standard") o.currents.variant = AVariant::Standard;
        else if (value == "alternate") o.currents.variant = AVariant::Alternate;
        else throw ConfigError("variant: expected standard or alternate");
    } else if (key == "en-reading") {
        try {
            o.currents.reading = EMinusReading::parse(value);
        } catch (const std::exception& e) {
            throw ConfigError(std::string("en-reading: ") + e.what());
        }
    } else if (key == "suite") {
        rc.suites = split_list(value);
    } else if (key == "relations") {
        rc.relations = split_list(value);
    } else if (key == "seed") {
        Rational r = rational(key, value);
        if (!r.is_integer() || r.sign() < 0) throw ConfigError("seed must be a nonnegative integer");
        rc.seed = static_cast<std::uint64_t>(r.to_long());
    } else if (key == "threads") {
        rc.threads = integer(key, value);
    } else if (key == "report") {
        rc.report = value;
    } else {
        throw ConfigError("unknown key '" + key + "'");
    }
}

void apply_file(RunConfig& rc, const std::map<std::string, std::string>& kv) {
    for (const auto& [full, value] : kv) {
        auto dot = full.find('.');
        std::string section = dot == std::string::npos ? "" : full.substr(0, dot);
        std::string key = dot == std::string::npos ? full : full.substr(dot + 1);
        auto it = section_of().find(key);
        if (it == section_of().end()) throw ConfigError("unknown key '" + full + "'");
        if (!section.empty() && section != it->second)
            throw ConfigError("key '" + key + "' belongs in section [" + it->second + "]");
        apply_key(rc, key, value);
    }
}

std::string RunConfig::summary() const {
    std::ostringstream os;
    os << oracle.str();
    if (seed) os << " seed=" << *seed;
    return os.str();
}

}  // namespace yangian::cli
