#pragma once

// Stable serialization of bound reports: JSON documents, sweep rows in CSV
// and JSON-lines form, and plain-text rendering.  Key order and formatting
// are frozen here so that output is byte-reproducible; integers of arbitrary
// size go out as decimal strings, exact rationals as "numerator/denominator"
// with a 6-significant-digit decimal alongside.

#include <icmb/bounds.hpp>

#include <json.hpp>

#include <cstdio>
#include <optional>
#include <sstream>
#include <string>

namespace icmb::render {

using ordered_json = nlohmann::ordered_json;

inline std::string integer_string(const Integer& v) { return v.str(); }

inline std::string rational_string(const Rational& v) {
    return boost::multiprecision::numerator(v).str() + "/" +
           boost::multiprecision::denominator(v).str();
}

// Convenience rounding of an exact rational; not used in any comparison.
inline std::string decimal_6sig(const Rational& v) {
    const long double x = v.convert_to<long double>();
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.6Lg", x);
    return buf;
}

// ---------------------------------------------------------------------------
// Cubic family reports
// ---------------------------------------------------------------------------

inline std::string prime_case_summary(const bounds::CSReport& rep) {
    std::string out;
    for (const auto& pr : rep.primes) {
        if (!out.empty()) out += ";";
        out += pr.p.str();
        out += ":";
        out += local::cs_case_code(pr.case_id);
    }
    return out;
}

inline ordered_json cs_report_json(const bounds::CSReport& rep) {
    ordered_json j;
    j["m"] = integer_string(rep.m);
    j["delta_phi"] = integer_string(rep.delta_phi);
    j["c_phi"] = integer_string(rep.c_phi);
    j["abs_delta_E"] = integer_string(rep.abs_delta_E);
    j["delta_E_sign"] = rep.delta_E_sign;
    j["r2"] = rep.r2;
    ordered_json primes = ordered_json::array();
    for (const auto& pr : rep.primes) {
        ordered_json p;
        p["p"] = integer_string(pr.p);
        p["case"] = local::cs_case_code(pr.case_id);
        p["ord_delta"] = pr.ord_delta;
        p["serre"] = pr.serre;
        p["orbital"] = integer_string(pr.orbital);
        p["a_factor"] = integer_string(pr.a_factor);
        primes.push_back(std::move(p));
    }
    j["primes"] = std::move(primes);
    j["A"] = integer_string(rep.A);
    j["minkowski_floor"] = integer_string(rep.minkowski_floor);
    j["classnum_bound"] = integer_string(rep.classnum_bound);
    j["bound_main"] = integer_string(rep.bound_main);
    j["bound_closed_form"] = rational_string(rep.bound_closed_form);
    j["bound_closed_form_decimal"] = decimal_6sig(rep.bound_closed_form);
    if (rep.bound_simple) {
        j["bound_simple"] = rational_string(*rep.bound_simple);
        j["bound_simple_decimal"] = decimal_6sig(*rep.bound_simple);
    } else {
        j["bound_simple"] = nullptr;
        j["bound_simple_decimal"] = nullptr;
    }
    return j;
}

inline std::string cs_report_text(const bounds::CSReport& rep) {
    std::ostringstream os;
    os << "m                 = " << rep.m << "\n";
    os << "disc phi          = " << rep.delta_phi << "\n";
    os << "C phi             = " << rep.c_phi << "\n";
    os << "local cases:\n";
    for (const auto& pr : rep.primes) {
        os << "  p=" << pr.p << "  case=" << local::cs_case_code(pr.case_id)
           << "  ord=" << pr.ord_delta << "  S=" << pr.serre << "  orbital=" << pr.orbital
           << "\n";
    }
    os << "A                 = " << rep.A << "\n";
    os << "|disc E|          = " << rep.abs_delta_E << "  (sign "
       << (rep.delta_E_sign > 0 ? "+" : "-") << ", r2 = " << rep.r2 << ")\n";
    os << "Minkowski floor   = " << rep.minkowski_floor << "\n";
    os << "class number bound= " << rep.classnum_bound << "\n";
    os << "bound (main)      = " << rep.bound_main << "\n";
    os << "bound (closed)    = " << rational_string(rep.bound_closed_form) << " ~ "
       << decimal_6sig(rep.bound_closed_form) << "\n";
    if (rep.bound_simple) {
        os << "bound (simple)    = " << rational_string(*rep.bound_simple) << " ~ "
           << decimal_6sig(*rep.bound_simple) << "\n";
    } else {
        os << "bound (simple)    = n/a (needs disc E > 3075)\n";
    }
    return os.str();
}

// ---------------------------------------------------------------------------
// Quadratic order reports
// ---------------------------------------------------------------------------

inline ordered_json class_number_json(const bounds::ClassNumberInput& c) {
    ordered_json j;
    j["value"] = integer_string(c.value);
    j["source"] = bounds::to_string(c.source);
    j["exact"] = c.exact();
    return j;
}

inline ordered_json quad_report_json(const bounds::QuadReport& rep,
                                     const std::optional<Integer>& icm) {
    ordered_json j;
    j["d"] = integer_string(rep.d);
    j["fund_disc"] = integer_string(rep.fund_disc);
    j["conductor"] = integer_string(rep.conductor);
    ordered_json lf = ordered_json::array();
    for (const auto& l : rep.local_factors) {
        ordered_json e;
        e["p"] = integer_string(l.p);
        e["serre"] = l.serre;
        e["splitting"] = local::to_string(l.splitting);
        e["factor"] = integer_string(l.factor);
        lf.push_back(std::move(e));
    }
    j["local_factors"] = std::move(lf);
    j["class_number"] = class_number_json(rep.class_number);
    j["bound_cor52"] = integer_string(rep.bound_cor52);
    j["conductor_factor_count"] = integer_string(rep.conductor_factor_count);
    j["cl_r"] = rep.cl_r ? class_number_json(*rep.cl_r) : ordered_json(nullptr);
    j["bound_cor53"] =
        rep.bound_cor53 ? ordered_json(integer_string(*rep.bound_cor53)) : ordered_json(nullptr);
    j["icm_exact"] = icm ? ordered_json(integer_string(*icm)) : ordered_json(nullptr);
    return j;
}

inline std::string quad_report_text(const bounds::QuadReport& rep,
                                    const std::optional<Integer>& icm) {
    std::ostringstream os;
    os << "d                 = " << rep.d << "\n";
    os << "fundamental disc  = " << rep.fund_disc << "\n";
    os << "conductor         = " << rep.conductor << "\n";
    os << "local factors:\n";
    if (rep.local_factors.empty()) os << "  (none: trivial conductor)\n";
    for (const auto& l : rep.local_factors) {
        os << "  p=" << l.p << "  S=" << l.serre << "  " << local::to_string(l.splitting)
           << "  factor=" << l.factor << "\n";
    }
    os << "#Cl(O)            = " << rep.class_number.value << " ("
       << bounds::to_string(rep.class_number.source)
       << (rep.class_number.exact() ? ", exact" : ", upper bound") << ")\n";
    os << "bound (Cl(O)*prod)= " << rep.bound_cor52 << "\n";
    if (rep.cl_r) {
        os << "#Cl(R)            = " << rep.cl_r->value << " ("
           << bounds::to_string(rep.cl_r->source) << ")\n";
        os << "bound (Cl(R)*cnt) = " << *rep.bound_cor53 << "  (count "
           << rep.conductor_factor_count << ")\n";
    } else {
        os << "bound (Cl(R)*cnt) = n/a (#Cl(R) unknown; pass --cl-r)\n";
    }
    if (icm) os << "exact #ICM        = " << *icm << "\n";
    return os.str();
}

// ---------------------------------------------------------------------------
// Sweep rows
// ---------------------------------------------------------------------------

struct SweepRow {
    Integer m;
    Integer delta_phi;
    Integer c_phi;
    Integer abs_delta_E;
    unsigned r2;
    Integer A;
    Integer classnum_bound;
    Integer bound_main;
    std::optional<Rational> bound_simple;
    std::string prime_case_summary;
};

inline SweepRow make_sweep_row(const bounds::CSReport& rep) {
    return {rep.m,
            rep.delta_phi,
            rep.c_phi,
            rep.abs_delta_E,
            rep.r2,
            rep.A,
            rep.classnum_bound,
            rep.bound_main,
            rep.bound_simple,
            prime_case_summary(rep)};
}

// RFC 4180 quoting: wrap and double embedded quotes when the field contains
// a comma, quote, or line break.
inline std::string csv_field(const std::string& s) {
    if (s.find_first_of(",\"\r\n") == std::string::npos) return s;
    std::string out = "\"";
    for (char c : s) {
        if (c == '"') out += '"';
        out += c;
    }
    out += '"';
    return out;
}

inline std::string sweep_csv_header() {
    return "m,delta_phi,c_phi,abs_delta_E,r2,A,classnum_bound,bound_main,bound_simple,"
           "prime_case_summary";
}

inline std::string sweep_csv_line(const SweepRow& row) {
    std::ostringstream os;
    os << row.m << "," << row.delta_phi << "," << row.c_phi << "," << row.abs_delta_E << ","
       << row.r2 << "," << row.A << "," << row.classnum_bound << "," << row.bound_main << ","
       << (row.bound_simple ? csv_field(rational_string(*row.bound_simple)) : std::string())
       << "," << csv_field(row.prime_case_summary);
    return os.str();
}

inline ordered_json sweep_row_json(const SweepRow& row) {
    ordered_json j;
    j["m"] = integer_string(row.m);
    j["delta_phi"] = integer_string(row.delta_phi);
    j["c_phi"] = integer_string(row.c_phi);
    j["abs_delta_E"] = integer_string(row.abs_delta_E);
    j["r2"] = row.r2;
    j["A"] = integer_string(row.A);
    j["classnum_bound"] = integer_string(row.classnum_bound);
    j["bound_main"] = integer_string(row.bound_main);
    j["bound_simple"] =
        row.bound_simple ? ordered_json(rational_string(*row.bound_simple)) : ordered_json(nullptr);
    j["prime_case_summary"] = row.prime_case_summary;
    return j;
}

}  // namespace icmb::render
