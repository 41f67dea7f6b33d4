#include "raqmod/json_io.hpp"
#include "raqmod/errors.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

namespace raqmod {

json scalar_to_json(const PeriodScalar& s)
{
    json terms = json::array();
    for (const auto& [m, q] : s.terms()) {
        json t;
        t["zetas"] = m.zetas;
        if (!m.symbols.empty())
            t["symbols"] = m.symbols;
        t["rat"] = q.get_str();
        terms.push_back(std::move(t));
    }
    return json{{"terms", terms}};
}

PeriodScalar scalar_from_json(const json& j)
{
    try {
        // Bare rationals are accepted as a shorthand.
        if (j.is_string())
            return PeriodScalar(parse_rational(j.get<std::string>()));
        if (j.is_number_integer())
            return PeriodScalar(j.get<long>());
        PeriodScalar out;
        for (const auto& t : j.at("terms")) {
            Monomial m;
            if (t.contains("zetas"))
                for (int z : t.at("zetas").get<std::vector<int>>())
                    m = m * Monomial::zeta(z);
            if (t.contains("symbols"))
                for (const auto& s : t.at("symbols").get<std::vector<std::string>>())
                    m = m * Monomial::symbol(s);
            out += PeriodScalar(m, parse_rational(t.at("rat").get<std::string>()));
        }
        return out;
    } catch (const json::exception& e) {
        throw InputError(std::string("malformed PeriodScalar JSON: ") + e.what());
    } catch (const DomainError& e) {
        throw InputError(std::string("malformed PeriodScalar JSON: ") + e.what());
    }
}

json series_to_json(const RAForm& f)
{
    json terms = json::array();
    for (const auto& [key, c] : f.series.terms())
        terms.push_back(json{{"m", key.m}, {"n", key.n}, {"k", key.k}, {"coeff", scalar_to_json(c)}});
    return json{{"weights", {f.r, f.s}}, {"order", f.order()}, {"terms", terms}};
}

RAForm series_from_json(const json& j)
{
    try {
        const auto w = j.at("weights").get<std::vector<int>>();
        if (w.size() != 2)
            throw InputError("weights must have two entries");
        const int order = j.at("order").get<int>();
        if (order < 0)
            throw InputError("order must be >= 0");
        BiSeries s(order);
        for (const auto& t : j.at("terms")) {
            const int m = t.at("m").get<int>(), n = t.at("n").get<int>(), k = t.at("k").get<int>();
            if (m < 0 || n < 0 || m > order || n > order)
                throw InputError("term exponent outside truncation box");
            s.add(m, n, k, scalar_from_json(t.at("coeff")));
        }
        return RAForm(w[0], w[1], std::move(s));
    } catch (const json::exception& e) {
        throw InputError(std::string("malformed series JSON: ") + e.what());
    }
}

RAForm read_series_file(const std::string& path)
{
    std::ifstream is(path);
    if (!is)
        throw InputError("cannot open " + path);
    json j;
    try {
        is >> j;
    } catch (const json::exception& e) {
        throw InputError(path + ": " + e.what());
    }
    return series_from_json(j);
}

json family_to_json(const std::map<std::pair<int, int>, RAForm>& members, const std::vector<std::string>& constants)
{
    json j = json::object();
    for (const auto& [rs, f] : members)
        j[std::to_string(rs.first) + "," + std::to_string(rs.second)] = series_to_json(f);
    j["constants"] = constants;
    return j;
}

std::string format_double(double v)
{
    if (std::isnan(v))
        return "null";
    if (std::isinf(v))
        return v > 0 ? "1e999" : "-1e999";
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

static void dump_rec(const json& j, int indent, int depth, std::ostringstream& os)
{
    const std::string pad = indent > 0 ? std::string(static_cast<std::size_t>(indent * (depth + 1)), ' ') : "";
    const std::string pad_end = indent > 0 ? std::string(static_cast<std::size_t>(indent * depth), ' ') : "";
    const char* nl = indent > 0 ? "\n" : "";
    if (j.is_object()) {
        if (j.empty()) {
            os << "{}";
            return;
        }
        os << "{" << nl;
        bool first = true;
        for (auto it = j.begin(); it != j.end(); ++it) {  // nlohmann::json keeps keys sorted
            if (!first)
                os << "," << nl;
            first = false;
            os << pad << json(it.key()).dump() << ":" << (indent > 0 ? " " : "");
            dump_rec(it.value(), indent, depth + 1, os);
        }
        os << nl << pad_end << "}";
    } else if (j.is_array()) {
        if (j.empty()) {
            os << "[]";
            return;
        }
        os << "[" << nl;
        bool first = true;
        for (const auto& v : j) {
            if (!first)
                os << "," << nl;
            first = false;
            os << pad;
            dump_rec(v, indent, depth + 1, os);
        }
        os << nl << pad_end << "]";
    } else if (j.is_number_float()) {
        os << format_double(j.get<double>());
    } else {
        os << j.dump();
    }
}

std::string dump_json(const json& j, int indent)
{
    std::ostringstream os;
    dump_rec(j, indent, 0, os);
    return os.str();
}

} // namespace raqmod
