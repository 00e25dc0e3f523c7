#include <iostream>

#include "CLI11.hpp"

#include "hwp/experiment.hpp"

namespace {

void common_flags(CLI::App* app, hwp::ExperimentConfig& c) {
    app->add_option("--k", c.k, "weight parameter k");
    app->add_option("--d", c.d, "square-free d");
    app->add_option("--nmax", c.nmax, "number of coefficients / q-expansion precision")->check(CLI::Range(16, 100000000));
    app->add_option("--psi-modulus", c.psi_modulus, "modulus of psi");
    app->add_option("--psi-index", c.psi_index, "enumeration index of psi (default: first primitive)");
    app->add_option("--output", c.output_path, "report (json) or coefficient dump (csv)");
    app->add_option("--format", c.format, "json or csv")
        ->transform(CLI::CheckedTransformer(std::map<std::string, hwp::Format>{{"json", hwp::Format::Json},
                                                                              {"csv", hwp::Format::Csv}}));
    app->add_flag("--exact", c.exact, "exact cyclotomic CSV layout");
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Periodic coefficient blocks of half-integral weight forms: exact identities and analytic checks"};
    app.require_subcommand(1);
    hwp::ExperimentConfig c;

    auto* theta = app.add_subcommand("theta-demo", "theta series blocks and their detected periods");
    common_flags(theta, c);
    theta->add_flag("--weight3half", c.weight3half, "use the weight 3/2 theta series");
    theta->add_option("--i", c.i, "block scale exponent for weight 3/2");

    auto* lift = app.add_subcommand("lift", "coefficients A(n) of the lifted series");
    common_flags(lift, c);
    lift->add_option("--block-file", c.input_path, "CSV of a(d n^2), n = 1, 2, ...");

    auto* ident = app.add_subcommand("identity-check", "exact master identity residual");
    common_flags(ident, c);
    ident->add_option("--l", c.l, "hypothesized period")->required();
    ident->add_option("--block-file", c.input_path, "CSV of a(d n^2), n = 1, 2, ...");

    auto* remark = app.add_subcommand("remark-check", "identity for the blocks a(d n^2) / n^i");
    common_flags(remark, c);
    remark->add_option("--l", c.l, "hypothesized period of a(d n^2) / n^i")->required();
    remark->add_option("--i", c.i, "scale exponent i >= 1");
    remark->add_option("--block-file", c.input_path, "CSV of a(d n^2), n = 1, 2, ...");

    auto* analytic = app.add_subcommand("analytic-check", "functional equations and trivial zeros");
    common_flags(analytic, c);

    auto* lemma = app.add_subcommand("lemma-check", "zero-free certificate and scan");
    common_flags(lemma, c);
    lemma->add_option("--coeff-file", c.input_path, "CSV of B(n), n = 1, 2, ...")->required();
    lemma->add_option("--C", c.C, "growth constant");
    lemma->add_option("--lambda", c.lambda, "growth exponent");
    lemma->add_option("--n1", c.n1, "growth bound holds from n1 on (default: last index)");
    lemma->add_option("--scan-width", c.scan_width, "scan Re s in [sigma0, sigma0 + width]");
    lemma->add_option("--t-max", c.t_max, "scan |Im s| <= t_max");
    lemma->add_option("--grid-step", c.grid_step, "scan cell size");

    auto* chars = app.add_subcommand("characters", "list the characters mod psi-modulus");
    common_flags(chars, c);

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return hwp::kExitUsage;
    }

    if (theta->parsed()) c.command = hwp::Command::ThetaDemo;
    if (lift->parsed()) c.command = hwp::Command::Lift;
    if (ident->parsed()) c.command = hwp::Command::IdentityCheck;
    if (remark->parsed()) c.command = hwp::Command::RemarkCheck;
    if (analytic->parsed()) c.command = hwp::Command::AnalyticCheck;
    if (lemma->parsed()) c.command = hwp::Command::LemmaCheck;
    if (chars->parsed()) c.command = hwp::Command::Characters;

    hwp::RunResult r = hwp::run(c);
    std::cout << r.report.dump(2) << '\n';
    return r.exit_code;
}
