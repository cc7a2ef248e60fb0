#include "wavetail/scenario.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

#include "wavetail/errors.hpp"

namespace wavetail {

namespace {

std::string trim(const std::string& s) {
    std::size_t a = s.find_first_not_of(" \t\r\n");
    if (a == std::string::npos) return "";
    std::size_t b = s.find_last_not_of(" \t\r\n");
    return s.substr(a, b - a + 1);
}

[[noreturn]] void parse_fail(int line, const std::string& msg) {
    fail(ErrKind::ParseError, "line " + std::to_string(line) + ": " + msg);
}

double parse_num(const std::string& s, int line) {
    try {
        std::size_t pos = 0;
        double v = std::stod(s, &pos);
        if (pos != s.size()) parse_fail(line, "trailing characters in number '" + s + "'");
        return v;
    } catch (const Error&) {
        throw;
    } catch (...) {
        parse_fail(line, "expected a number, got '" + s + "'");
    }
}

bool parse_bool(const std::string& s, int line) {
    if (s == "true" || s == "1" || s == "yes") return true;
    if (s == "false" || s == "0" || s == "no") return false;
    parse_fail(line, "expected a boolean, got '" + s + "'");
}

// factor tokens: phi | dphi | dbar | ddphi, optional ^k
void parse_factors(const std::string& body, int line, TermSpec& term) {
    std::istringstream is(body);
    std::string tok;
    while (is >> tok) {
        int power = 1;
        std::string name = tok;
        std::size_t caret = tok.find('^');
        if (caret != std::string::npos) {
            name = tok.substr(0, caret);
            power = static_cast<int>(parse_num(tok.substr(caret + 1), line));
            if (power < 1) parse_fail(line, "factor power must be >= 1");
        }
        int derivs;
        bool tang = false;
        if (name == "phi") derivs = 0;
        else if (name == "dphi") derivs = 1;
        else if (name == "dbar") { derivs = 1; tang = true; }
        else if (name == "ddphi") derivs = 2;
        else parse_fail(line, "unknown factor '" + name + "'");
        for (int k = 0; k < power; ++k) {
            term.factor_derivs.push_back(derivs);
            term.factor_tangential.push_back(tang);
        }
    }
    if (term.factor_derivs.empty()) parse_fail(line, "term has no factors");
}

TermSpec parse_term(const std::string& value, int line) {
    TermSpec term;
    std::string rest = trim(value);
    // optional leading coefficient
    {
        std::istringstream is(rest);
        std::string first;
        is >> first;
        char c = first.empty() ? '\0' : first[0];
        if (c == '-' || c == '+' || (c >= '0' && c <= '9')) {
            term.coeff = parse_num(first, line);
            std::string tail;
            std::getline(is, tail);
            rest = trim(tail);
        }
    }
    if (rest.rfind("dt(", 0) == 0) {
        if (rest.back() != ')') parse_fail(line, "unbalanced dt(...)");
        term.dt_wrapped = true;
        rest = rest.substr(3, rest.size() - 4);
        parse_factors(rest, line, term);
        // dt(...) marks d_(i)(base^(n+1)) structure: the inner product must be
        // base^n * d(base), i.e. exactly one factor carrying one extra
        // derivative order than the rest.
        int base = *std::min_element(term.factor_derivs.begin(), term.factor_derivs.end());
        int outer = 0;
        for (int d : term.factor_derivs)
            if (d == base + 1) ++outer;
            else if (d != base) parse_fail(line, "dt(...) content must be base^n d(base)");
        if (outer != 1) parse_fail(line, "dt(...) needs exactly one derived factor");
        if (static_cast<int>(term.factor_derivs.size()) < 3)
            parse_fail(line, "dt(...) needs n >= 2 underived factors");
    } else {
        parse_factors(rest, line, term);
    }
    return term;
}

}  // namespace

std::uint64_t Scenario::hash() const {
    std::uint64_t h = 1469598103934665603ull;
    for (unsigned char c : normalized_text) {
        h ^= c;
        h *= 1099511628211ull;
    }
    return h;
}

Scenario parse_scenario(const std::string& text) {
    Scenario sc;
    std::istringstream is(text);
    std::string line;
    int lineno = 0;
    std::ostringstream normalized;
    while (std::getline(is, line)) {
        ++lineno;
        std::string s = trim(line);
        if (s.empty() || s[0] == '#') continue;
        std::size_t eq = s.find('=');
        if (eq == std::string::npos) parse_fail(lineno, "expected key = value");
        std::string key = trim(s.substr(0, eq));
        std::string value = trim(s.substr(eq + 1));
        if (key.empty() || value.empty()) parse_fail(lineno, "empty key or value");
        normalized << key << "=" << value << "\n";

        if (key == "sigma") sc.background.sigma = parse_num(value, lineno);
        else if (key == "a_h") sc.background.a_h = parse_num(value, lineno);
        else if (key == "a_B") sc.background.a_B = parse_num(value, lineno);
        else if (key == "a_V") sc.background.a_V = parse_num(value, lineno);
        else if (key == "a_gomega") sc.background.a_gomega = parse_num(value, lineno);
        else if (key == "a_mod") sc.background.a_mod = parse_num(value, lineno);
        else if (key == "profile") sc.background.profile = value;
        else if (key == "term") sc.terms.push_back(parse_term(value, lineno));
        else if (key == "epsilon") sc.epsilon = parse_num(value, lineno);
        else if (key == "r0") sc.r0 = parse_num(value, lineno);
        else if (key == "width") sc.width = parse_num(value, lineno);
        else if (key == "data") sc.data_mode = value;
        else if (key == "dr") sc.grid.dr = parse_num(value, lineno);
        else if (key == "cfl") sc.grid.cfl = parse_num(value, lineno);
        else if (key == "r_max") sc.grid.r_max = parse_num(value, lineno);
        else if (key == "t_max") sc.grid.t_max = parse_num(value, lineno);
        else if (key == "slice_dt") sc.grid.slice_dt = parse_num(value, lineno);
        else if (key == "probe_r_lo") sc.probe_r_lo = parse_num(value, lineno);
        else if (key == "probe_r_hi") sc.probe_r_hi = parse_num(value, lineno);
        else if (key == "blowup_ceiling") sc.blowup_ceiling = parse_num(value, lineno);
        else if (key == "sigma_reduced") sc.sigma_reduced = parse_bool(value, lineno);
        else parse_fail(lineno, "unknown key '" + key + "'");
    }
    sc.normalized_text = normalized.str();

    if (sc.background.sigma <= 0) fail(ErrKind::ValidationError, "sigma must be positive");
    if (std::fabs(sc.background.a_mod) > 1.0)
        fail(ErrKind::ValidationError, "|a_mod| must be <= 1 to keep |c'(t)| <= <t>^-1");
    if (sc.data_mode != "time-symmetric" && sc.data_mode != "outgoing")
        fail(ErrKind::ValidationError, "data must be time-symmetric or outgoing");
    if (sc.grid.dr <= 0 || sc.grid.cfl <= 0 || sc.grid.cfl > 1.0)
        fail(ErrKind::ValidationError, "need dr > 0 and 0 < cfl <= 1");
    if (sc.grid.r_max <= sc.r0 + sc.width) fail(ErrKind::ValidationError, "r_max inside the data support");
    if (sc.epsilon < 0 || sc.width <= 0) fail(ErrKind::ValidationError, "bad data parameters");
    sc.problem();  // run the nonlinearity checks (sigma > 1/4 for phi^2 dphi etc.)
    return sc;
}

Scenario load_scenario(const std::string& path) {
    std::ifstream f(path);
    if (!f) fail(ErrKind::IoError, "cannot open scenario file: " + path);
    std::ostringstream ss;
    ss << f.rdbuf();
    return parse_scenario(ss.str());
}

}  // namespace wavetail
