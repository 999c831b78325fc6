#include "oovr/config.hpp"

#include <cstdlib>
#include <fstream>
#include <sstream>

#include "oovr/errors.hpp"

namespace oovr {

namespace {

std::string trim(const std::string &s) {
    std::size_t a = s.find_first_not_of(" \t\r");
    if (a == std::string::npos)
        return "";
    std::size_t b = s.find_last_not_of(" \t\r");
    return s.substr(a, b - a + 1);
}

double parse_double(const std::string &key, const std::string &v) {
    char *end = nullptr;
    double d = std::strtod(v.c_str(), &end);
    if (end == v.c_str() || *end != '\0')
        throw DataError("config: bad value for " + key + ": \"" + v + "\"");
    return d;
}

std::uint64_t parse_uint(const std::string &key, const std::string &v) {
    char *end = nullptr;
    unsigned long long u = std::strtoull(v.c_str(), &end, 10);
    if (end == v.c_str() || *end != '\0' || v[0] == '-')
        throw DataError("config: bad value for " + key + ": \"" + v + "\"");
    return u;
}

} // namespace

void Config::validate() const {
    if (k1 < 0.0 || b < 0.0 || b > 1.0)
        throw DataError("config: k1 must be >= 0 and b in [0,1]");
    if (theta < 0.0 || theta > 1.0)
        throw DataError("config: theta must be in [0,1]");
    if (L < 1)
        throw DataError("config: L must be >= 1");
    if (N < 1 || N_final < 1)
        throw DataError("config: N and N_final must be >= 1");
    if (K < 1)
        throw DataError("config: K must be >= 1");
    if (epsilon <= 0.0)
        throw DataError("config: epsilon must be > 0");
    for (double p : {p_sub, p_del, p_ins, p_false_oov})
        if (p < 0.0 || p > 1.0)
            throw DataError("config: noise probabilities must be in [0,1]");
    if (p_sub + p_del > 1.0)
        throw DataError("config: p_sub + p_del must be <= 1");
}

Config parse_config(const std::string &text) {
    Config cfg;
    std::istringstream in(text);
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        std::string s = trim(line);
        if (s.empty() || s[0] == '#')
            continue;
        std::size_t eq = s.find('=');
        if (eq == std::string::npos)
            throw DataError("config: line " + std::to_string(lineno) + ": expected key = value");
        std::string key = trim(s.substr(0, eq));
        std::string val = trim(s.substr(eq + 1));
        if (key == "k1")
            cfg.k1 = parse_double(key, val);
        else if (key == "b")
            cfg.b = parse_double(key, val);
        else if (key == "theta")
            cfg.theta = parse_double(key, val);
        else if (key == "L")
            cfg.L = static_cast<std::uint32_t>(parse_uint(key, val));
        else if (key == "epsilon")
            cfg.epsilon = parse_double(key, val);
        else if (key == "score_mode") {
            if (val == "sum")
                cfg.score_mode = ScoreMode::Sum;
            else if (val == "average")
                cfg.score_mode = ScoreMode::Average;
            else
                throw DataError("config: score_mode must be sum or average");
        } else if (key == "N")
            cfg.N = static_cast<std::uint32_t>(parse_uint(key, val));
        else if (key == "N_final")
            cfg.N_final = static_cast<std::uint32_t>(parse_uint(key, val));
        else if (key == "K")
            cfg.K = static_cast<std::uint32_t>(parse_uint(key, val));
        else if (key == "p_sub")
            cfg.p_sub = parse_double(key, val);
        else if (key == "p_del")
            cfg.p_del = parse_double(key, val);
        else if (key == "p_ins")
            cfg.p_ins = parse_double(key, val);
        else if (key == "p_false_oov")
            cfg.p_false_oov = parse_double(key, val);
        else if (key == "seed")
            cfg.seed = parse_uint(key, val);
        else
            throw DataError("config: unknown key \"" + key + "\"");
    }
    cfg.validate();
    return cfg;
}

Config load_config(const std::string &path) {
    std::ifstream in(path);
    if (!in)
        throw DataError("cannot open config file: " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_config(buf.str());
}

} // namespace oovr
