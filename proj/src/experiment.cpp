#include "hwp/experiment.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

#include "hwp/analytic.hpp"
#include "hwp/io.hpp"
#include "hwp/lift.hpp"

namespace hwp {

using nlohmann::json;

namespace {

struct Report {
    json doc;
    Report(const ExperimentConfig& c, json params) {
        doc["command"] = command_name(c.command);
        doc["params"] = std::move(params);
        doc["checks"] = json::array();
    }
    void check(const std::string& name, bool pass, const std::string& detail) {
        doc["checks"].push_back({{"name", name}, {"pass", pass}, {"detail", detail}});
    }
    bool all_pass() const {
        for (const auto& c : doc["checks"])
            if (!c["pass"].get<bool>()) return false;
        return true;
    }
    void record(json r) {
        if (!doc.contains("records")) doc["records"] = json::array();
        doc["records"].push_back(std::move(r));
    }
};

json base_params(const ExperimentConfig& c) {
    json p;
    p["k"] = c.k;
    p["d"] = c.d;
    p["l"] = c.l;
    p["i"] = c.i;
    p["nmax"] = c.nmax;
    p["psi_modulus"] = c.psi_modulus;
    if (c.psi_index) p["psi_index"] = *c.psi_index;
    if (!c.input_path.empty()) p["input_path"] = c.input_path;
    p["exact"] = c.exact;
    return p;
}

size_t default_psi_index(const std::vector<DirichletCharacter>& chars) {
    for (size_t j = 0; j < chars.size(); ++j)
        if (chars[j].is_primitive()) return j;
    return 0;
}

DirichletCharacter select_psi(const ExperimentConfig& c, json& params) {
    auto chars = enumerate_characters(c.psi_modulus);
    size_t idx = c.psi_index ? *c.psi_index : default_psi_index(chars);
    if (idx >= chars.size())
        throw DomainError("psi index " + std::to_string(idx) + " out of range: modulus " +
                          std::to_string(c.psi_modulus) + " has " + std::to_string(chars.size()) + " characters");
    params["psi_index"] = idx;
    params["psi"] = chars[idx].debug_line();
    return chars[idx];
}

std::vector<CycloNumber> read_values_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw DomainError("cannot open '" + path + "'");
    return read_values_csv(in);
}

void write_output(const ExperimentConfig& c, const json& report, const DirichletSeries* series,
                  const QExpansion* qexp) {
    if (c.output_path.empty()) return;
    std::ofstream out(c.output_path);
    if (!out) throw DomainError("cannot write '" + c.output_path + "'");
    if (c.format == Format::Json) {
        out << report.dump(2) << '\n';
    } else if (qexp) {
        write_qexpansion_csv(out, *qexp, c.exact);
    } else if (series) {
        write_series_csv(out, *series, c.exact);
    } else {
        throw DomainError(std::string(command_name(c.command)) + " has no coefficient output; use --format json");
    }
}

std::string period_text(std::optional<size_t> p, size_t len) {
    if (!p) return "no period detected on " + std::to_string(len) + " values (inconclusive)";
    return "block period " + std::to_string(*p) + " detected on " + std::to_string(len) + " values";
}

std::vector<CycloNumber> psi_values(const DirichletCharacter& psi, size_t n, bool times_n) {
    std::vector<CycloNumber> v(n);
    for (size_t m = 1; m <= n; ++m) {
        v[m - 1] = psi.eval(static_cast<i64>(m));
        if (times_n) v[m - 1] *= Rational(static_cast<unsigned long>(m));
    }
    return v;
}

// Block for the identity checks: a(d n^2) (divided by n^i for the remark
// variant), from file or from the theta pattern. Short files are extended by
// the period after checking it on the given range.
CoefficientBlock identity_block(const ExperimentConfig& c, const DirichletCharacter& psi, bool remark, Report& r) {
    std::vector<CycloNumber> v = c.input_path.empty() ? psi_values(psi, c.nmax, remark) : read_values_file(c.input_path);
    const unsigned i = remark ? c.i : 0;
    if (remark && i == 0) throw DomainError("remark-check needs --i >= 1");
    for (size_t n = 1; n <= v.size() && i > 0; ++n) {
        Integer p;
        mpz_ui_pow_ui(p.get_mpz_t(), n, i);
        v[n - 1] /= Rational(p);
    }
    if (v.size() < c.nmax) {
        if (v.size() < c.l)
            throw RangeError("block file has " + std::to_string(v.size()) + " values, fewer than the period " +
                             std::to_string(c.l));
        CoefficientBlock probe = CoefficientBlock::from_values(c.d, i, v);
        if (auto w = periodicity_witness(probe, c.l))
            throw PeriodicityViolation(*w, "block is not periodic mod " + std::to_string(c.l));
        size_t given = v.size();
        v.resize(c.nmax);
        for (size_t n = given; n < c.nmax; ++n) v[n] = v[n % c.l];
        r.doc["notes"].push_back("block extended from " + std::to_string(given) + " to " + std::to_string(c.nmax) +
                                 " values by period " + std::to_string(c.l));
    }
    return CoefficientBlock::from_values(c.d, i, std::move(v));
}

json identity_record(const ExperimentConfig& c, const ResidualReport& res) {
    json rec;
    rec["check"] = "master_identity";
    rec["k"] = c.k;
    rec["d"] = c.d;
    rec["l"] = c.l;
    rec["nmax"] = c.nmax;
    rec["residual_exact_zero"] = res.exact_zero();
    rec["witness_index"] = res.witness_index ? json(*res.witness_index) : json(nullptr);
    return rec;
}

int theta_demo(const ExperimentConfig& c, json& out) {
    json params = base_params(c);
    params["weight3half"] = c.weight3half;
    DirichletCharacter psi = select_psi(c, params);
    Report r(c, params);
    QExpansion f = theta_series(psi, c.d, c.weight3half, c.nmax);
    const unsigned i = c.weight3half ? c.i : 0;
    CoefficientBlock b = block(f, c.d, i);
    r.doc["block_length"] = b.length();

    bool pattern = !c.weight3half || i == 1;  // block should reproduce psi(n)
    auto expected = psi_values(psi, b.length(), c.weight3half && i == 0);
    bool match = b.values == expected;
    r.check(pattern ? "block_equals_psi" : "block_equals_n_psi", match,
            match ? "all " + std::to_string(b.length()) + " entries agree" : "block differs from the theta pattern");

    std::optional<size_t> p;
    if (b.length() >= 16) p = detect_period(b.values);
    r.doc["detected_period"] = p ? json(*p) : json(nullptr);
    if (pattern) {
        bool ok = p && psi.modulus() % *p == 0;
        r.check("period_detected", ok, period_text(p, b.length()));
    } else {
        r.check("aperiodic_on_sample", !p, period_text(p, b.length()));
    }
    r.doc["pass"] = r.all_pass();
    out = r.doc;
    write_output(c, out, nullptr, &f);
    return r.all_pass() ? kExitPass : kExitCheckFailed;
}

int lift_cmd(const ExperimentConfig& c, json& out) {
    json params = base_params(c);
    DirichletCharacter psi = select_psi(c, params);
    Report r(c, params);
    std::vector<CycloNumber> v = c.input_path.empty() ? psi_values(psi, c.nmax, false) : read_values_file(c.input_path);
    CoefficientBlock b = CoefficientBlock::from_values(c.d, 0, std::move(v));
    LiftParams lp = LiftParams::make(c.k, c.d, psi, std::max<u64>(c.l, 1));
    r.doc["psi_d"] = lp.psi_d.debug_line();
    DirichletSeries A = shimura_A(b, lp, c.nmax);
    DirichletSeries blk(std::vector<CycloNumber>(b.values.begin(), b.values.begin() + static_cast<long>(c.nmax)));
    DirichletSeries viaL = convolve(l_coeffs(lp.psi_d, static_cast<int>(c.k) - 1, c.nmax), blk);
    auto diff = first_difference(A, viaL);
    r.check("lift_factorization", !diff,
            diff ? "first mismatch at n = " + std::to_string(*diff) : "A(n) equals L(s-k+1, psi_d) * block for n <= " + std::to_string(c.nmax));
    r.doc["pass"] = r.all_pass();
    out = r.doc;
    write_output(c, out, &A, nullptr);
    return r.all_pass() ? kExitPass : kExitCheckFailed;
}

int identity_cmd(const ExperimentConfig& c, json& out, bool remark) {
    json params = base_params(c);
    DirichletCharacter psi = select_psi(c, params);
    Report r(c, params);
    r.doc["notes"] = json::array();
    CoefficientBlock b = identity_block(c, psi, remark, r);
    LiftParams lp = LiftParams::make(c.k, c.d, psi, c.l);
    r.doc["psi_d"] = lp.psi_d.debug_line();

    if (auto w = periodicity_witness(b, c.l)) {
        r.check("periodicity", false, "block is not periodic mod " + std::to_string(c.l));
        r.doc["witness_index"] = *w;
        r.doc["pass"] = false;
        out = r.doc;
        write_output(c, out, nullptr, nullptr);
        return kExitPeriodicity;
    }
    r.check("periodicity", true, "block periodic mod " + std::to_string(c.l) + " on " + std::to_string(b.length()) + " values");

    ResidualReport res = remark ? remark_variant_residual(b, lp, c.nmax) : master_identity_residual(b, lp, c.nmax);
    for (auto& n : res.notes) r.doc["notes"].push_back(n);
    r.record(identity_record(c, res));
    std::ostringstream detail;
    detail << (res.exact_zero() ? "residual exactly zero" : "first mismatch at n = " + std::to_string(*res.witness_index))
           << "; max |residual| = " << res.max_abs_residual;
    r.check(remark ? "remark_identity" : "master_identity", res.exact_zero(), detail.str());
    r.doc["pass"] = r.all_pass();
    out = r.doc;
    write_output(c, out, nullptr, nullptr);
    return r.all_pass() ? kExitPass : kExitCheckFailed;
}

int analytic_cmd(const ExperimentConfig& c, json& out) {
    json params = base_params(c);
    Report r(c, params);
    constexpr double kFeTol = 1e-8, kZeroTol = 1e-12;
    const cplx points[] = {{0.5, 0.0}, {2.0, 3.0}, {-1.5, 0.5}, {0.3, 7.0}, {1.7, -2.0}, {-0.5, -4.0}};

    std::vector<DirichletCharacter> chars;
    if (c.psi_index) {
        auto all = enumerate_characters(c.psi_modulus);
        if (*c.psi_index >= all.size()) throw DomainError("psi index out of range");
        chars.push_back(all[*c.psi_index]);
    } else {
        for (auto& chi : enumerate_characters(c.psi_modulus))
            if (chi.is_primitive()) chars.push_back(chi);
    }
    if (chars.empty()) r.check("functional_equation", true, "no primitive characters mod " + std::to_string(c.psi_modulus));
    for (const auto& chi : chars) {
        double worst = 0.0;
        for (cplx s : points) {
            double res = functional_eq_residual(chi, s);
            worst = std::max(worst, res);
            r.record({{"check", "functional_equation"},
                      {"chi_modulus", chi.modulus()},
                      {"chi", chi.debug_line()},
                      {"s", {s.real(), s.imag()}},
                      {"residual", res},
                      {"tolerance", kFeTol},
                      {"pass", res < kFeTol}});
        }
        std::ostringstream d;
        d << chi.debug_line() << ": max residual " << worst;
        r.check("functional_equation", worst < kFeTol, d.str());

        // Eisenstein product with chi against the principal character mod 1
        const DirichletCharacter one(1);
        if (chi.is_even() == (c.k % 2 == 0) && !(chi.modulus() == 1 && c.k < 3)) {
            double e = 0.0;
            for (cplx s : {cplx(0.25, 1.5), cplx(c.k + 0.5, -2.0)})
                e = std::max(e, eisenstein_fe_residual(one, chi, c.k, s) /
                                    std::max(1.0, std::abs(eisenstein_lambda(one, chi, c.k, s))));
            std::ostringstream ed;
            ed << chi.debug_line() << ", k = " << c.k << ": relative residual " << e;
            r.check("eisenstein_functional_equation", e < kFeTol, ed.str());
        }
    }

    const unsigned delta = c.k % 2;
    std::vector<cplx> odd, even;
    const long start = -static_cast<long>(c.k) + 1 + static_cast<long>(delta);  // -(k-1-delta)
    for (long s = start - 1; odd.size() < 10; --s)
        if (std::labs(s) % 2 == 1) odd.emplace_back(static_cast<double>(s), 0.0);
    for (long s = 2; s >= -20; s -= 2) even.emplace_back(static_cast<double>(s), 0.0);
    auto zeros = gamma_ratio_zero_check(c.k, delta, odd);
    bool zok = true;
    for (auto& z : zeros) zok = zok && !z.indeterminate && !z.pole && std::abs(z.value) < kZeroTol;
    auto evens = gamma_ratio_zero_check(c.k, delta, even);
    bool eok = true;
    for (auto& z : evens) eok = eok && (z.pole || std::abs(z.value) > kZeroTol);
    r.check("trivial_zeros", zok,
            "ratio vanishes at the first 10 odd integers below " + std::to_string(start) + " (k = " + std::to_string(c.k) +
                ", delta = " + std::to_string(delta) + ")");
    r.check("even_integers_nonzero", eok, "no zero at even integers in [-20, 2]");

    r.doc["pass"] = r.all_pass();
    out = r.doc;
    write_output(c, out, nullptr, nullptr);
    return r.all_pass() ? kExitPass : kExitCheckFailed;
}

int lemma_cmd(const ExperimentConfig& c, json& out) {
    json params = base_params(c);
    params["C"] = c.C;
    params["lambda"] = c.lambda;
    Report r(c, params);
    if (c.input_path.empty()) throw DomainError("lemma-check needs --coeff-file");
    DirichletSeries series(read_values_file(c.input_path));
    auto z = series.to_complex();
    size_t n1 = c.n1 ? *c.n1 : z.size();
    r.doc["params"]["n1"] = n1;
    ZeroFreeCertificate cert = zero_free_certificate(std::span<const cplx>(z), c.C, c.lambda, n1);
    r.doc["certificate"] = {{"sigma0", cert.sigma0},       {"n0", cert.n0},
                            {"lead_abs", cert.lead_abs},   {"tail_bound_at_sigma0", cert.tail_bound_at_sigma0},
                            {"finite_part", cert.finite_part}, {"lambda", cert.lambda},
                            {"C", cert.C},                 {"n1", cert.n1}};
    std::ostringstream d;
    d << "sigma0 = " << cert.sigma0 << ", bound " << cert.tail_bound_at_sigma0 << " < |B(n0)| = " << cert.lead_abs;
    r.check("certificate", cert.tail_bound_at_sigma0 < cert.lead_abs, d.str());

    auto hits = zero_scan(z, cert.sigma0, cert.sigma0 + c.scan_width, c.t_max, c.grid_step, {c.C, c.lambda});
    json jh = json::array();
    for (auto& h : hits) jh.push_back({{"s", {h.s.real(), h.s.imag()}}, {"abs_value", h.abs_value}, {"bound", h.bound}});
    r.doc["scan"] = {{"sigma_min", cert.sigma0},
                     {"sigma_max", cert.sigma0 + c.scan_width},
                     {"t_max", c.t_max},
                     {"grid_step", c.grid_step},
                     {"suspected_zeros", jh}};
    r.check("scan_empty", hits.empty(), std::to_string(hits.size()) + " uncleared cells in the certified region");
    r.doc["pass"] = r.all_pass();
    out = r.doc;
    write_output(c, out, nullptr, nullptr);
    return r.all_pass() ? kExitPass : kExitCheckFailed;
}

int characters_cmd(const ExperimentConfig& c, json& out) {
    json params;
    params["psi_modulus"] = c.psi_modulus;
    Report r(c, params);
    json list = json::array();
    for (auto& chi : enumerate_characters(c.psi_modulus)) list.push_back(chi.debug_line());
    r.doc["characters"] = list;
    r.doc["pass"] = true;
    out = r.doc;
    write_output(c, out, nullptr, nullptr);
    return kExitPass;
}

json error_report(const ExperimentConfig& c, const std::string& kind, const std::string& what) {
    json doc;
    doc["command"] = command_name(c.command);
    doc["params"] = base_params(c);
    doc["checks"] = json::array();
    doc["error"] = {{"kind", kind}, {"message", what}};
    doc["pass"] = false;
    return doc;
}

}  // namespace

const char* command_name(Command c) {
    switch (c) {
        case Command::ThetaDemo: return "theta-demo";
        case Command::Lift: return "lift";
        case Command::IdentityCheck: return "identity-check";
        case Command::RemarkCheck: return "remark-check";
        case Command::AnalyticCheck: return "analytic-check";
        case Command::LemmaCheck: return "lemma-check";
        case Command::Characters: return "characters";
    }
    return "?";
}

RunResult run(const ExperimentConfig& c) {
    RunResult res;
    try {
        if (c.nmax < 16) throw DomainError("nmax must be at least 16");
        if (!is_squarefree(c.d)) throw DomainError("d = " + std::to_string(c.d) + " is not square-free");
        if (c.psi_modulus == 0) throw DomainError("psi modulus must be positive");
        switch (c.command) {
            case Command::ThetaDemo: res.exit_code = theta_demo(c, res.report); break;
            case Command::Lift: res.exit_code = lift_cmd(c, res.report); break;
            case Command::IdentityCheck: res.exit_code = identity_cmd(c, res.report, false); break;
            case Command::RemarkCheck: res.exit_code = identity_cmd(c, res.report, true); break;
            case Command::AnalyticCheck: res.exit_code = analytic_cmd(c, res.report); break;
            case Command::LemmaCheck: res.exit_code = lemma_cmd(c, res.report); break;
            case Command::Characters: res.exit_code = characters_cmd(c, res.report); break;
        }
    } catch (const CsvParseError& e) {
        res.exit_code = kExitParse;
        res.report = error_report(c, "parse", e.what());
        res.report["error"]["line"] = e.line;
    } catch (const PeriodicityViolation& e) {
        res.exit_code = kExitPeriodicity;
        res.report = error_report(c, "periodicity", e.what());
        res.report["witness_index"] = e.index;
    } catch (const std::exception& e) {
        res.exit_code = kExitUsage;
        res.report = error_report(c, "usage", e.what());
    }
    if (res.exit_code == kExitParse || res.exit_code == kExitPeriodicity || res.exit_code == kExitUsage) {
        if (!c.output_path.empty() && c.format == Format::Json) {
            std::ofstream o(c.output_path);
            if (o) o << res.report.dump(2) << '\n';
        }
    }
    return res;
}

std::optional<size_t> detect_period(std::span<const CycloNumber> values) {
    if (values.size() < 16) throw DomainError("detect_period: need at least 16 values");
    const size_t n = values.size();
    for (size_t p = 1; 3 * p <= n; ++p) {
        bool ok = true;
        for (size_t j = 0; j + p < n && ok; ++j) ok = values[j] == values[j + p];
        if (ok) return p;
    }
    return std::nullopt;
}

}  // namespace hwp
