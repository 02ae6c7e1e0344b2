// Command-line surface: single-instance reports (cs, quad), range sweeps,
// verification suites, and direct access to the class-number bound and the
// form oracle.  All heavy lifting lives in the headers; this file only
// parses arguments, routes, and prints.

#include <CLI11.hpp>

#include <icmb/audit.hpp>
#include <icmb/render.hpp>

#include "suites.hpp"

#include <algorithm>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace {

using icmb::Integer;
namespace bounds = icmb::bounds;
namespace classnum = icmb::classnum;
namespace oracle = icmb::oracle;
namespace render = icmb::render;
namespace suites = icmb::suites;

Integer parse_integer(const std::string& s) {
    try {
        return Integer(s);
    } catch (const std::exception&) {
        throw std::invalid_argument("'" + s + "' is not an integer");
    }
}

// Default precision of the pi enclosure, overridable via ICMB_PI_BITS.
unsigned default_pi_bits() {
    if (const char* env = std::getenv("ICMB_PI_BITS")) {
        char* end = nullptr;
        const unsigned long v = std::strtoul(env, &end, 10);
        if (end != env && *end == '\0' && v >= 16 && v <= (1ul << 20))
            return static_cast<unsigned>(v);
        std::cerr << "warning: ignoring invalid ICMB_PI_BITS='" << env << "'\n";
    }
    return classnum::kDefaultPiBits;
}

unsigned resolve_pi_bits(unsigned flag_value) {
    return flag_value ? flag_value : default_pi_bits();
}

std::pair<long long, long long> parse_mrange(const std::string& s) {
    const auto colon = s.find(':', 1);  // position 0 may be a sign
    if (colon == std::string::npos)
        throw std::invalid_argument("--mrange expects FROM:TO, got '" + s + "'");
    try {
        std::size_t used = 0;
        const long long a = std::stoll(s.substr(0, colon), &used);
        if (used != colon) throw std::invalid_argument("");
        const std::string rest = s.substr(colon + 1);
        const long long b = std::stoll(rest, &used);
        if (used != rest.size()) throw std::invalid_argument("");
        return {a, b};
    } catch (const std::exception&) {
        throw std::invalid_argument("--mrange expects FROM:TO, got '" + s + "'");
    }
}

void print_suite_text(const suites::SuiteResult& res) {
    if (res.pass()) {
        std::cout << "suite " << res.name << ": PASS (" << res.checks << " checks)\n";
    } else {
        std::cout << "suite " << res.name << ": FAIL (" << res.failures.size() << " of "
                  << res.checks << " checks failed)\n";
        std::cout << "  first counterexample: " << res.failures.front() << "\n";
    }
}

render::ordered_json suite_json(const suites::SuiteResult& res) {
    render::ordered_json j;
    j["name"] = res.name;
    j["checks"] = res.checks;
    j["pass"] = res.pass();
    j["failures_total"] = res.failures.size();
    render::ordered_json fails = render::ordered_json::array();
    const std::size_t cap = std::min<std::size_t>(res.failures.size(), 16);
    for (std::size_t i = 0; i < cap; ++i) fails.push_back(res.failures[i]);
    j["failures"] = std::move(fails);
    return j;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Certified upper bounds for the size of ideal class monoids"};
    app.require_subcommand(1);
    int rc = 0;

    // cs ---------------------------------------------------------------
    auto* cs = app.add_subcommand("cs", "Bound report for the cubic order of parameter m");
    std::string cs_m;
    bool cs_json = false;
    unsigned cs_pi_bits = 0;
    cs->add_option("--m", cs_m, "Family parameter m")->required();
    cs->add_flag("--json", cs_json, "Emit JSON");
    cs->add_option("--pi-bits", cs_pi_bits, "Pi enclosure precision (default 96 or ICMB_PI_BITS)");
    cs->callback([&] {
        bounds::CSOptions opts;
        opts.pi_bits = resolve_pi_bits(cs_pi_bits);
        const auto rep = bounds::cs_bound(parse_integer(cs_m), opts);
        if (cs_json)
            std::cout << render::cs_report_json(rep).dump(2) << "\n";
        else
            std::cout << render::cs_report_text(rep);
    });

    // quad ---------------------------------------------------------------
    auto* quad =
        app.add_subcommand("quad", "Bound report for the quadratic order of conductor f");
    std::string q_d, q_f, q_h, q_clr;
    bool q_json = false, q_skip_icm = false;
    unsigned q_pi_bits = 0;
    // the default -h help short name would shadow the --h option below
    quad->set_help_flag("--help", "Print this help message and exit");
    quad->add_option("--d", q_d, "Squarefree d defining Q(sqrt(d))")->required();
    quad->add_option("--f", q_f, "Conductor, >= 1")->required();
    quad->add_option("--h", q_h, "Known class number of the maximal order");
    quad->add_option("--cl-r", q_clr, "Known class group size of the order itself");
    quad->add_flag("--json", q_json, "Emit JSON");
    quad->add_flag("--skip-icm", q_skip_icm, "Skip the exact monoid size even when d < 0");
    quad->add_option("--pi-bits", q_pi_bits,
                     "Pi enclosure precision (default 96 or ICMB_PI_BITS)");
    quad->callback([&] {
        const Integer d = parse_integer(q_d);
        const Integer f = parse_integer(q_f);
        std::optional<Integer> h, clr;
        if (!q_h.empty()) h = parse_integer(q_h);
        if (!q_clr.empty()) clr = parse_integer(q_clr);
        const auto rep = bounds::quad_bound(d, f, h, clr, resolve_pi_bits(q_pi_bits));
        std::optional<Integer> icm;
        if (d < 0 && !q_skip_icm) icm = oracle::icm_exact(d, f);
        if (q_json)
            std::cout << render::quad_report_json(rep, icm).dump(2) << "\n";
        else
            std::cout << render::quad_report_text(rep, icm);
    });

    // sweep ---------------------------------------------------------------
    auto* sweep = app.add_subcommand("sweep", "Bound reports for a whole range of m");
    long long s_from = 0, s_to = 0;
    unsigned s_threads = 1, s_pi_bits = 0;
    std::string s_out, s_format = "csv";
    sweep->add_option("--from", s_from, "First m")->required();
    sweep->add_option("--to", s_to, "Last m")->required();
    sweep->add_option("--threads", s_threads, "Worker threads (default 1)");
    sweep->add_option("--out", s_out, "Output file (default stdout)");
    sweep->add_option("--format", s_format, "csv or jsonl (default csv)")
        ->check(CLI::IsMember({"csv", "jsonl"}));
    sweep->add_option("--pi-bits", s_pi_bits,
                      "Pi enclosure precision (default 96 or ICMB_PI_BITS)");
    sweep->callback([&] {
        if (s_from > s_to) throw std::invalid_argument("sweep: --from must be <= --to");
        bounds::CSOptions opts;
        opts.pi_bits = resolve_pi_bits(s_pi_bits);
        const std::size_t n = static_cast<std::size_t>(s_to - s_from + 1);
        std::vector<std::string> lines(n);
        std::vector<char> has_simple(n, 0);
        suites::parallel_for(n, s_threads, [&](std::size_t i) {
            const auto rep = bounds::cs_bound(Integer(s_from + static_cast<long long>(i)), opts);
            const auto row = render::make_sweep_row(rep);
            lines[i] = (s_format == "csv") ? render::sweep_csv_line(row)
                                           : render::sweep_row_json(row).dump();
            has_simple[i] = rep.bound_simple.has_value() ? 1 : 0;
        });

        std::ofstream file;
        std::ostream* os = &std::cout;
        if (!s_out.empty()) {
            file.open(s_out, std::ios::binary);
            if (!file) throw std::runtime_error("sweep: cannot open output file '" + s_out + "'");
            os = &file;
        }
        if (s_format == "csv") *os << render::sweep_csv_header() << "\n";
        for (const auto& line : lines) *os << line << "\n";
        os->flush();
        if (!*os) throw std::runtime_error("sweep: write failed on '" +
                                           (s_out.empty() ? std::string("<stdout>") : s_out) +
                                           "'");
        const auto k =
            static_cast<std::size_t>(std::count(has_simple.begin(), has_simple.end(), 1));
        std::cerr << "disc E > 3075 for " << k << " of " << n << " values of m\n";
    });

    // verify ---------------------------------------------------------------
    auto* verify = app.add_subcommand("verify", "Run a verification suite; exit 0 iff it passes");
    std::string v_suite, v_mrange = "-200:200";
    unsigned v_dmax = 13, v_fmax = 30, v_discmax = 200, v_threads = 1;
    bool v_json = false;
    verify->add_option("suite", v_suite, "coherence, yun, audit, or all")
        ->required()
        ->check(CLI::IsMember({"coherence", "yun", "audit", "all"}));
    verify->add_option("--mrange", v_mrange, "m range FROM:TO for coherence (default -200:200)");
    verify->add_option("--dmax", v_dmax, "Max |d| for yun (default 13)");
    verify->add_option("--fmax", v_fmax, "Max conductor for yun and audit (default 30)");
    verify->add_option("--discmax", v_discmax,
                       "Max |fundamental disc| for audit (default 200)");
    verify->add_option("--threads", v_threads, "Worker threads (default 1)");
    verify->add_flag("--json", v_json, "Emit JSON");
    verify->callback([&] {
        const auto [m_from, m_to] = parse_mrange(v_mrange);
        std::vector<suites::SuiteResult> results;
        if (v_suite == "coherence" || v_suite == "all")
            results.push_back(suites::run_coherence(m_from, m_to, v_threads));
        if (v_suite == "yun" || v_suite == "all")
            results.push_back(suites::run_yun(v_dmax, v_fmax, v_threads));
        if (v_suite == "audit" || v_suite == "all")
            results.push_back(suites::run_audit(v_discmax, v_fmax, v_threads));

        bool all_pass = true;
        for (const auto& res : results) all_pass = all_pass && res.pass();
        if (v_json) {
            render::ordered_json j;
            render::ordered_json arr = render::ordered_json::array();
            for (const auto& res : results) arr.push_back(suite_json(res));
            j["suites"] = std::move(arr);
            j["pass"] = all_pass;
            std::cout << j.dump(2) << "\n";
        } else {
            for (const auto& res : results) print_suite_text(res);
        }
        rc = all_pass ? 0 : 1;
    });

    // classnum-bound --------------------------------------------------------
    auto* cnb = app.add_subcommand("classnum-bound",
                                   "Certified class number bound from the field shape");
    unsigned c_degree = 0, c_r2 = 0, c_pi_bits = 0;
    std::string c_absdisc;
    bool c_json = false;
    cnb->add_option("--degree", c_degree, "Field degree, >= 2")->required();
    cnb->add_option("--r2", c_r2, "Number of complex places");
    cnb->add_option("--abs-disc", c_absdisc, "|discriminant|")->required();
    cnb->add_flag("--json", c_json, "Emit JSON");
    cnb->add_option("--pi-bits", c_pi_bits,
                    "Pi enclosure precision (default 96 or ICMB_PI_BITS)");
    cnb->callback([&] {
        const unsigned bits = resolve_pi_bits(c_pi_bits);
        const auto b = classnum::class_number_upper_bound(
            {c_degree, c_r2, parse_integer(c_absdisc)}, bits);
        if (c_json) {
            render::ordered_json j;
            j["degree"] = c_degree;
            j["r2"] = c_r2;
            j["abs_disc"] = render::integer_string(b.shape.abs_disc);
            j["pi_bits"] = bits;
            j["minkowski_floor"] = render::integer_string(b.floor_M);
            j["bound"] = render::integer_string(b.bound);
            std::cout << j.dump(2) << "\n";
        } else {
            std::cout << "floor(M) = " << b.floor_M << "\n";
            std::cout << "bound    = " << b.bound << "\n";
        }
    });

    // oracle-hform -----------------------------------------------------------
    auto* hform = app.add_subcommand(
        "oracle-hform", "Form class number of an imaginary quadratic discriminant");
    std::string o_disc;
    bool o_list = false, o_json = false;
    hform->add_option("--disc", o_disc, "Discriminant D < 0, D = 0 or 1 mod 4")->required();
    hform->add_flag("--list", o_list, "Also list the reduced forms");
    hform->add_flag("--json", o_json, "Emit JSON");
    hform->callback([&] {
        const Integer D = parse_integer(o_disc);
        const auto forms = oracle::reduced_forms(D);
        if (o_json) {
            render::ordered_json j;
            j["disc"] = render::integer_string(D);
            j["class_number"] = std::to_string(forms.size());
            j["torsion_units"] = oracle::torsion_units(D);
            if (o_list) {
                render::ordered_json arr = render::ordered_json::array();
                for (const auto& fm : forms) {
                    render::ordered_json e;
                    e["a"] = render::integer_string(fm.a);
                    e["b"] = render::integer_string(fm.b);
                    e["c"] = render::integer_string(fm.c);
                    arr.push_back(std::move(e));
                }
                j["forms"] = std::move(arr);
            } else {
                j["forms"] = nullptr;
            }
            std::cout << j.dump(2) << "\n";
        } else {
            std::cout << "h(" << D << ") = " << forms.size() << "\n";
            if (o_list)
                for (const auto& fm : forms)
                    std::cout << "  (" << fm.a << ", " << fm.b << ", " << fm.c << ")\n";
        }
    });

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return rc;
}
