#include "modeq/equation_io.hpp"

#include <cctype>
#include <chrono>
#include <filesystem>
#include <fstream>
#include <sstream>

namespace modeq {

namespace {

std::string rat_str(const Rat& r) {
    Rat c = r;
    c.canonicalize();
    return c.get_str();
}

Rat rat_from_str(const std::string& s) {
    Rat r;
    if (r.set_str(s, 10) != 0) throw InvariantViolation("bad rational literal: " + s);
    r.canonicalize();
    return r;
}

// One gamma slot of one F-degree as a signed rendered chunk.
void render_slot(std::ostringstream& out, bool& first, const JPoly<Rat>& p,
                 int a, int b, long long fdeg) {
    // count nonzero terms
    int nterms = 0;
    for (auto& c : p.c)
        if (c != 0) ++nterms;
    if (nterms == 0) return;

    bool neg;
    std::ostringstream body;
    auto emit_pow = [&](const char* sym, long long k) {
        body << "*" << sym;
        if (k > 1) body << "^" << k;
    };
    if (nterms == 1) {
        long long d = p.degree();
        while (p.coeff(d) == 0) --d;
        Rat c = p.coeff(d);
        neg = c < 0;
        Rat mag = neg ? Rat(-c) : c;
        bool unit = mag == 1 && (d > 0 || a > 0 || b > 0 || fdeg > 0);
        if (!unit) body << rat_str(mag);
        if (d > 0) {
            if (unit && body.str().empty()) { body << "J"; if (d > 1) body << "^" << d; }
            else emit_pow("J", d);
        }
    } else {
        // multi-term J-polynomial, leading coefficient rendered positive
        Rat lead = p.coeff(p.degree());
        neg = lead < 0;
        body << "(";
        bool inner_first = true;
        for (long long d = p.degree(); d >= 0; --d) {
            Rat c = p.coeff(d);
            if (c == 0) continue;
            if (neg) c = -c;
            bool cneg = c < 0;
            Rat mag = cneg ? Rat(-c) : c;
            if (inner_first) {
                if (cneg) body << "-";
                inner_first = false;
            } else {
                body << (cneg ? " - " : " + ");
            }
            if (mag != 1 || d == 0) {
                body << rat_str(mag);
                if (d > 0) body << "*";
            }
            if (d > 0) {
                body << "J";
                if (d > 1) body << "^" << d;
            }
        }
        body << ")";
    }
    std::string s = body.str();
    if (b > 0) {
        if (s.empty()) { s = "G3"; if (b > 1) s += "^" + std::to_string(b); }
        else { s += "*G3"; if (b > 1) s += "^" + std::to_string(b); }
    }
    if (a > 0) {
        if (s.empty()) { s = "G2"; if (a > 1) s += "^" + std::to_string(a); }
        else { s += "*G2"; if (a > 1) s += "^" + std::to_string(a); }
    }
    if (fdeg > 0) {
        std::string x = "X" + (fdeg > 1 ? "^" + std::to_string(fdeg) : "");
        s = s.empty() ? x : s + "*" + x;
    }
    if (s.empty()) s = "1";

    if (first) {
        if (neg) out << "-";
        first = false;
    } else {
        out << (neg ? " - " : " + ");
    }
    out << s;
}

} // namespace

std::string render_equation_text(const ModEqPoly<Rat>& eq) {
    std::ostringstream out;
    bool first = true;
    for (long long d = eq.degree(); d >= 0; --d) {
        const TriPoly<Rat>& c = eq.coeffs[std::size_t(d)];
        for (int b = 1; b >= 0; --b)
            for (int a = 2; a >= 0; --a)
                render_slot(out, first, c.part[a][b], a, b, d);
    }
    if (first) return "0";
    return out.str();
}

namespace {

struct TextParser {
    const std::string& s;
    std::size_t i = 0;

    explicit TextParser(const std::string& str) : s(str) {}

    void skip_ws() {
        while (i < s.size() && std::isspace((unsigned char)s[i])) ++i;
    }
    bool eof() {
        skip_ws();
        return i >= s.size();
    }
    char peek() {
        skip_ws();
        return i < s.size() ? s[i] : '\0';
    }

    long long parse_exponent() {
        if (peek() == '^') {
            ++i;
            skip_ws();
            std::size_t j = i;
            while (j < s.size() && std::isdigit((unsigned char)s[j])) ++j;
            long long e = std::stoll(s.substr(i, j - i));
            i = j;
            return e;
        }
        return 1;
    }

    Rat parse_number() {
        skip_ws();
        std::size_t j = i;
        while (j < s.size() && std::isdigit((unsigned char)s[j])) ++j;
        Rat r = rat_from_str(s.substr(i, j - i));
        i = j;
        return r;
    }

    // inner J-polynomial inside parentheses
    JPoly<Rat> parse_jpoly() {
        JPoly<Rat> p;
        int sign = 1;
        if (peek() == '-') { sign = -1; ++i; }
        else if (peek() == '+') ++i;
        while (true) {
            Rat coeff(sign);
            long long jdeg = 0;
            bool saw = false;
            while (true) {
                char c = peek();
                if (std::isdigit((unsigned char)c)) {
                    coeff *= parse_number();
                    saw = true;
                } else if (c == 'J') {
                    ++i;
                    jdeg += parse_exponent();
                    saw = true;
                } else if (c == '*') {
                    ++i;
                    continue;
                } else {
                    break;
                }
            }
            if (!saw) throw InvariantViolation("empty term in J-polynomial");
            if ((long long)p.c.size() <= jdeg) p.c.resize(std::size_t(jdeg + 1), Rat(0));
            p.c[std::size_t(jdeg)] += coeff;
            char c = peek();
            if (c == '+') { sign = 1; ++i; }
            else if (c == '-') { sign = -1; ++i; }
            else break;
        }
        p.trim();
        return p;
    }
};

} // namespace

ModEqPoly<Rat> parse_equation_text(const std::string& text) {
    ModEqPoly<Rat> eq;
    if (text == "0") return eq;
    TextParser tp(text);
    struct Term {
        Rat coeff{1};
        JPoly<Rat> jp;
        int a = 0, b = 0;
        long long fdeg = 0;
        bool has_jp = false;
    };
    std::vector<Term> terms;
    int sign = 1;
    if (tp.peek() == '-') { sign = -1; ++tp.i; }
    else if (tp.peek() == '+') ++tp.i;
    while (!tp.eof()) {
        Term t;
        t.coeff = Rat(sign);
        bool saw = false;
        while (true) {
            char c = tp.peek();
            if (std::isdigit((unsigned char)c)) {
                t.coeff *= tp.parse_number();
                saw = true;
            } else if (c == '(') {
                ++tp.i;
                t.jp = tp.parse_jpoly();
                if (tp.peek() != ')') throw InvariantViolation("unbalanced parenthesis");
                ++tp.i;
                t.has_jp = true;
                saw = true;
            } else if (c == 'J') {
                ++tp.i;
                long long e = tp.parse_exponent();
                JPoly<Rat> jm;
                jm.c.assign(std::size_t(e + 1), Rat(0));
                jm.c[std::size_t(e)] = Rat(1);
                t.jp = t.has_jp ? t.jp * jm : jm;
                t.has_jp = true;
                saw = true;
            } else if (c == 'G') {
                ++tp.i;
                char which = tp.s[tp.i];
                ++tp.i;
                long long e = tp.parse_exponent();
                if (which == '2') t.a += int(e);
                else if (which == '3') t.b += int(e);
                else throw InvariantViolation("unknown symbol G" + std::string(1, which));
                saw = true;
            } else if (c == 'X') {
                ++tp.i;
                t.fdeg = tp.parse_exponent();
                saw = true;
            } else if (c == '*') {
                ++tp.i;
            } else {
                break;
            }
        }
        if (!saw) throw InvariantViolation("empty term in equation text");
        terms.push_back(std::move(t));
        if (tp.eof()) break;
        char c = tp.peek();
        if (c == '+') { sign = 1; ++tp.i; }
        else if (c == '-') { sign = -1; ++tp.i; }
        else throw InvariantViolation("unexpected character in equation text");
    }
    long long maxdeg = 0;
    for (auto& t : terms) maxdeg = std::max(maxdeg, t.fdeg);
    eq.coeffs.resize(std::size_t(maxdeg + 1));
    for (auto& t : terms) {
        JPoly<Rat> jp = t.has_jp ? t.jp : JPoly<Rat>::constant(Rat(1));
        jp = jp.scaled(t.coeff);
        TriPoly<Rat> mono;
        mono.part[t.a % 3][t.b % 2] = jp; // exponents are already normal-form
        eq.coeffs[std::size_t(t.fdeg)] = eq.coeffs[std::size_t(t.fdeg)] + mono;
    }
    return eq;
}

nlohmann::json equation_to_json(const ModEqPoly<Rat>& eq) {
    nlohmann::json arr = nlohmann::json::array();
    for (long long d = 0; d <= eq.degree(); ++d) {
        const TriPoly<Rat>& c = eq.coeffs[std::size_t(d)];
        nlohmann::json terms = nlohmann::json::array();
        for (int a = 0; a < 3; ++a)
            for (int b = 0; b < 2; ++b) {
                const auto& p = c.part[a][b];
                for (long long jd = 0; jd <= p.degree(); ++jd) {
                    if (p.coeff(jd) == 0) continue;
                    terms.push_back({{"jdeg", jd},
                                     {"g2", a},
                                     {"g3", b},
                                     {"coeff", rat_str(p.coeff(jd))}});
                }
            }
        if (!terms.empty()) arr.push_back({{"fdeg", d}, {"terms", terms}});
    }
    return arr;
}

ModEqPoly<Rat> equation_from_json(const nlohmann::json& j) {
    ModEqPoly<Rat> eq;
    long long maxdeg = 0;
    for (const auto& entry : j)
        maxdeg = std::max(maxdeg, entry.at("fdeg").get<long long>());
    eq.coeffs.resize(std::size_t(maxdeg + 1));
    for (const auto& entry : j) {
        long long d = entry.at("fdeg").get<long long>();
        for (const auto& t : entry.at("terms")) {
            int a = t.at("g2").get<int>();
            int b = t.at("g3").get<int>();
            long long jd = t.at("jdeg").get<long long>();
            Rat c = rat_from_str(t.at("coeff").get<std::string>());
            auto& p = eq.coeffs[std::size_t(d)].part[a][b];
            if ((long long)p.c.size() <= jd) p.c.resize(std::size_t(jd + 1), Rat(0));
            p.c[std::size_t(jd)] += c;
        }
    }
    return eq;
}

nlohmann::json series_to_json(const FracSeries<Rat>& s) {
    nlohmann::json coeffs = nlohmann::json::array();
    for (const auto& c : s.c) coeffs.push_back(rat_str(c));
    return {{"denom", s.denom}, {"val", s.lo}, {"trunc", s.hi}, {"coeffs", coeffs}};
}

FracSeries<Rat> series_from_json(const nlohmann::json& j) {
    FracSeries<Rat> s;
    s.denom = j.at("denom").get<long long>();
    s.lo = j.at("val").get<long long>();
    s.hi = j.at("trunc").get<long long>();
    for (const auto& c : j.at("coeffs")) s.c.push_back(rat_from_str(c.get<std::string>()));
    if ((long long)s.c.size() != s.hi - s.lo + 1 && !(s.c.empty() && s.lo == s.hi + 1))
        throw InvariantViolation("series window does not match coefficient count");
    s.trim();
    return s;
}

nlohmann::json record_to_json(const EquationRecord& rec) {
    nlohmann::json j;
    j["tool_version"] = rec.tool_version;
    j["timestamp"] = rec.timestamp;
    j["kind"] = rec.kind;
    j["label"] = rec.label;
    j["sign_theorem"] = rec.sign_theorem;
    if (rec.kind == "kiepert") {
        j["p"] = rec.p;
    } else {
        const ParamSet& ps = *rec.params;
        j["params"] = {{"p1", ps.p1},     {"p2", ps.p2},   {"s", ps.s},
                       {"e", ps.e},       {"delta", ps.delta},
                       {"r", ps.r.str()}, {"t", ps.t},     {"sign", ps.sign},
                       {"degree", ps.degree}};
    }
    j["equation"] = equation_to_json(rec.equation);
    if (rec.verification) {
        const VerifyReport& v = *rec.verification;
        j["verification"] = {{"samples", v.samples},
                             {"tol", v.tol},
                             {"residual_plus", v.residual_plus},
                             {"residual_minus", v.residual_minus},
                             {"chosen_sign", v.chosen_sign},
                             {"convergence_warning", v.convergence_warning}};
    } else {
        j["verification"] = nullptr;
    }
    return j;
}

EquationRecord record_from_json(const nlohmann::json& j) {
    EquationRecord rec;
    rec.tool_version = j.at("tool_version").get<std::string>();
    rec.timestamp = j.at("timestamp").get<std::string>();
    rec.kind = j.at("kind").get<std::string>();
    rec.label = j.at("label").get<std::string>();
    rec.sign_theorem = j.at("sign_theorem").get<int>();
    if (rec.kind == "kiepert") {
        rec.p = j.at("p").get<long long>();
    } else {
        const auto& pj = j.at("params");
        rec.params = derive_params(pj.at("p1").get<long long>(),
                                   pj.at("p2").get<long long>(),
                                   pj.at("e").get<long long>());
    }
    rec.equation = equation_from_json(j.at("equation"));
    if (!j.at("verification").is_null()) {
        VerifyReport v;
        const auto& vj = j.at("verification");
        v.samples = vj.at("samples").get<int>();
        v.tol = vj.at("tol").get<double>();
        v.residual_plus = vj.at("residual_plus").get<double>();
        v.residual_minus = vj.at("residual_minus").get<double>();
        v.chosen_sign = vj.at("chosen_sign").get<int>();
        v.convergence_warning = vj.at("convergence_warning").get<bool>();
        rec.verification = v;
    }
    return rec;
}

std::string iso8601_now() {
    auto now = std::chrono::system_clock::now();
    std::time_t t = std::chrono::system_clock::to_time_t(now);
    char buf[32];
    std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", std::gmtime(&t));
    return buf;
}

std::string write_record_to_cache(const EquationRecord& rec, const std::string& dir) {
    std::filesystem::create_directories(dir);
    std::string name = rec.kind == "kiepert"
                           ? "kiepert-p" + std::to_string(rec.p)
                           : "double-eta-" + std::to_string(rec.params->p1) + "-" +
                                 std::to_string(rec.params->p2);
    std::string path = dir + "/" + name + ".json";
    std::ofstream out(path);
    out << record_to_json(rec).dump(2) << "\n";
    if (!out) throw InvariantViolation("cannot write cache file " + path);
    return path;
}

} // namespace modeq
