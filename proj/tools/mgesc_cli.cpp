// Command-line front end: binding-energy tables, truncation study, direct
// eigensolver, cross-route verification, and wavefunction sampling for the
// screened Coulomb potential. CSV on stdout by default, --json for JSON.
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "mgesc/mgesc.hpp"

using nlohmann::json;

namespace {

mgesc::QuantumNumbers parse_state(const std::string& text) {
    for (const mgesc::StateSpec& spec : mgesc::table_states())
        if (text == spec.label) return spec.qn;
    const auto comma = text.find(',');
    if (comma != std::string::npos) {
        try {
            const int n = std::stoi(text.substr(0, comma));
            const int l = std::stoi(text.substr(comma + 1));
            if (n >= 0 && l >= 0) return {n, l};
        } catch (const std::exception&) {
        }
    }
    throw mgesc::argument_error("state must be 1s, 2s, 3s, or n,l with n,l >= 0; got '" + text +
                                "'");
}

// Beta tokens are plain numbers or lo:hi:step ranges (inclusive endpoints).
std::vector<double> parse_betas(const std::vector<std::string>& tokens) {
    std::vector<double> betas;
    for (const std::string& token : tokens) {
        const auto c1 = token.find(':');
        if (c1 == std::string::npos) {
            betas.push_back(mgesc::detail::parse_double_field(token, "beta"));
            continue;
        }
        const auto c2 = token.find(':', c1 + 1);
        if (c2 == std::string::npos)
            throw mgesc::argument_error("beta range must be lo:hi:step, got '" + token + "'");
        const double lo = mgesc::detail::parse_double_field(token.substr(0, c1), "beta range lo");
        const double hi =
            mgesc::detail::parse_double_field(token.substr(c1 + 1, c2 - c1 - 1), "beta range hi");
        const double step = mgesc::detail::parse_double_field(token.substr(c2 + 1), "beta range step");
        if (!(step > 0.0) || hi < lo)
            throw mgesc::argument_error("beta range must satisfy lo <= hi, step > 0");
        for (double b = lo; b <= hi + 1e-12; b += step) betas.push_back(b);
    }
    return betas;
}

const std::vector<double>& published_table1_betas() {
    static const std::vector<double> betas = {0.01, 0.02, 0.03, 0.04, 0.05, 0.06, 0.07,
                                              0.08, 0.09, 0.1,  0.2,  0.3,  0.4,  0.5,
                                              0.6,  0.7,  0.8,  0.9,  1.0};
    return betas;
}

const std::vector<double>& published_table2_betas() {
    static const std::vector<double> betas = {0.02, 0.04, 0.05, 0.06, 0.08,
                                              0.1,  0.2,  0.3,  0.5,  0.8};
    return betas;
}

std::optional<mgesc::ReferenceTable> load_reference_if_present(const std::string& dir) {
    const std::string path = dir + "/table1_reference.csv";
    if (!std::filesystem::exists(path)) return std::nullopt;
    return mgesc::load_table1_reference(path);
}

void write_output(const std::string& text, const std::string& path) {
    if (path.empty()) {
        std::cout << text;
        return;
    }
    std::ofstream out(path);
    if (!out) throw mgesc::argument_error("cannot open output file " + path);
    out << text;
}

json optional_number(const std::optional<double>& value) {
    return value ? json(*value) : json(nullptr);
}

json table1_to_json(const std::vector<mgesc::TableRow>& rows) {
    json arr = json::array();
    for (const mgesc::TableRow& row : rows)
        arr.push_back({{"beta", row.beta},
                       {"state", row.state_label},
                       {"series_energy", row.series_energy},
                       {"numerov_energy", optional_number(row.numerov_energy)},
                       {"reference_energy", optional_number(row.reference_energy)},
                       {"abs_delta", optional_number(row.abs_delta)}});
    return arr;
}

json table2_to_json(const std::vector<mgesc::Table2Row>& rows) {
    json arr = json::array();
    for (const mgesc::Table2Row& row : rows) {
        json obj = {{"state", row.state_label}, {"beta", row.beta}};
        for (std::size_t k = 0; k < row.orders.size(); ++k)
            obj["order" + std::to_string(row.orders[k])] = row.energies[k];
        arr.push_back(std::move(obj));
    }
    return arr;
}

json verify_to_json(const std::vector<mgesc::VerifyRecord>& records) {
    json arr = json::array();
    for (const mgesc::VerifyRecord& rec : records)
        arr.push_back({{"check", rec.check_name},
                       {"lhs", rec.lhs},
                       {"rhs", rec.rhs},
                       {"rel_err", rec.rel_err},
                       {"tolerance", rec.tolerance},
                       {"pass", rec.pass}});
    return arr;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"bound states of the screened Coulomb potential "
                 "-(a/r)[1+(1+br)exp(-2br)]"};
    app.require_subcommand(1);
    // Subcommands inherit fallthrough, so --json/--output parse in either
    // position relative to the subcommand name.
    app.fallthrough();
    bool as_json = false;
    std::string output_path;
    app.add_flag("--json", as_json, "emit JSON instead of CSV/text");
    app.add_option("--output", output_path, "write to a file instead of stdout");

    int opt_n = 0;
    int opt_l = 0;
    double opt_beta = 0.0;
    double opt_a = 1.0;
    int opt_order = 6;
    CLI::App* energy = app.add_subcommand("energy", "perturbation-series level for one state");
    energy->add_option("--n", opt_n, "radial quantum number")->required();
    energy->add_option("--l", opt_l, "orbital quantum number")->required();
    energy->add_option("--beta", opt_beta, "screening ratio b/a")->required();
    energy->add_option("--a", opt_a, "coupling strength");
    energy->add_option("--order", opt_order, "truncation order: 0, 1, 3, 4, or 6")
        ->check(CLI::IsMember({0, 1, 3, 4, 6}));

    std::vector<std::string> beta_tokens;
    bool with_numerov = false;
    std::string data_dir = MGESC_DATA_DIR;
    CLI::App* table1 = app.add_subcommand("table1", "binding-energy table E/a^2");
    table1->add_option("--betas", beta_tokens, "beta values or lo:hi:step ranges")
        ->delimiter(',');
    table1->add_flag("--numerov", with_numerov, "add the direct eigensolver column");
    table1->add_option("--data", data_dir, "directory holding the published reference CSVs");

    CLI::App* table2 = app.add_subcommand("table2", "truncation-order study E/a^2");
    table2->add_option("--betas", beta_tokens, "beta values or lo:hi:step ranges")
        ->delimiter(',');

    std::string state_label = "1s";
    double solver_tol = 0.0;
    CLI::App* numerov = app.add_subcommand("numerov", "direct eigensolver for one state");
    numerov->add_option("--state", state_label, "1s, 2s, 3s, or n,l")->required();
    numerov->add_option("--beta", opt_beta, "screening ratio b/a")->required();
    numerov->add_option("--a", opt_a, "coupling strength");
    numerov->add_option("--tol", solver_tol, "energy bisection tolerance");

    bool strict = false;
    CLI::App* verify_cmd = app.add_subcommand("verify", "cross-route verification records");
    verify_cmd->add_flag("--strict", strict,
                         "hold documented discrepancies to the nominal tolerance");
    verify_cmd->add_option("--data", data_dir, "directory holding the published reference CSVs");

    double rmax = 10.0;
    int samples = 200;
    CLI::App* wavefunction =
        app.add_subcommand("wavefunction", "sample the ground-state wavefunction routes");
    wavefunction->add_option("--state", state_label, "only 1s carries both correction paths");
    wavefunction->add_option("--beta", opt_beta, "screening ratio b/a")->required();
    wavefunction->add_option("--rmax", rmax, "largest sampled radius");
    wavefunction->add_option("--samples", samples, "number of sample points")
        ->check(CLI::Range(2, 1000000));

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        if (energy->parsed()) {
            mgesc::PotentialParams params;
            params.a = opt_a;
            params.b = opt_beta * opt_a;
            const mgesc::QuantumNumbers qn{opt_n, opt_l};
            const double e_over_a2 = mgesc::total_energy(params, qn, opt_order) / (opt_a * opt_a);
            std::string text;
            if (as_json) {
                const json obj = {{"n", opt_n},           {"l", opt_l},
                                  {"beta", opt_beta},     {"a", opt_a},
                                  {"order", opt_order},   {"energy_over_a2", e_over_a2},
                                  {"energy", e_over_a2 * opt_a * opt_a}};
                text = obj.dump(2) + "\n";
            } else {
                text = "E/a^2 = " + mgesc::detail::format_energy(e_over_a2) + "\n";
            }
            write_output(text, output_path);
            return 0;
        }

        if (table1->parsed()) {
            const std::vector<double> betas =
                beta_tokens.empty() ? published_table1_betas() : parse_betas(beta_tokens);
            const std::optional<mgesc::ReferenceTable> ref = load_reference_if_present(data_dir);
            const std::vector<mgesc::TableRow> rows =
                mgesc::table1(betas, 1.0, with_numerov, ref ? &*ref : nullptr);
            write_output(as_json ? table1_to_json(rows).dump(2) + "\n"
                                 : mgesc::emit_table1_csv(rows),
                         output_path);
            return 0;
        }

        if (table2->parsed()) {
            const std::vector<double> betas =
                beta_tokens.empty() ? published_table2_betas() : parse_betas(beta_tokens);
            const std::vector<mgesc::Table2Row> rows = mgesc::table2(betas);
            write_output(as_json ? table2_to_json(rows).dump(2) + "\n"
                                 : mgesc::emit_table2_csv(rows),
                         output_path);
            return 0;
        }

        if (numerov->parsed()) {
            mgesc::PotentialParams params;
            params.a = opt_a;
            params.b = opt_beta * opt_a;
            const mgesc::QuantumNumbers qn = parse_state(state_label);
            mgesc::SolverConfig config;
            config.grid = mgesc::build_grid(params, qn);
            if (solver_tol > 0.0) config.energy_tol = solver_tol;
            const double e_over_a2 = mgesc::solve_eigenvalue(params, qn, config) / (opt_a * opt_a);
            std::string text;
            if (as_json) {
                const json obj = {{"state", state_label},
                                  {"beta", opt_beta},
                                  {"a", opt_a},
                                  {"energy_over_a2", e_over_a2}};
                text = obj.dump(2) + "\n";
            } else {
                text = "E/a^2 = " + mgesc::detail::format_energy(e_over_a2) + "\n";
            }
            write_output(text, output_path);
            return 0;
        }

        if (verify_cmd->parsed()) {
            const std::optional<mgesc::ReferenceTable> ref = load_reference_if_present(data_dir);
            mgesc::VerifyOptions opts;
            opts.strict = strict;
            opts.reference = ref ? &*ref : nullptr;
            const std::vector<mgesc::VerifyRecord> records = mgesc::verify(opts);
            write_output(as_json ? verify_to_json(records).dump(2) + "\n"
                                 : mgesc::emit_verify_csv(records),
                         output_path);
            return mgesc::all_pass(records) ? 0 : 1;
        }

        if (wavefunction->parsed()) {
            const mgesc::QuantumNumbers qn = parse_state(state_label);
            if (qn.n != 0 || qn.l != 0)
                throw mgesc::unsupported_state_error(
                    "wavefunction sampling covers the 1s state only");
            mgesc::PotentialParams params;
            params.b = opt_beta;
            const mgesc::QuadratureSpec spec{};
            const mgesc::CoulombState chi = mgesc::coulomb_wavefunction(params, qn, spec);
            const mgesc::GroundStateWavefunction numeric =
                mgesc::ground_state_wavefunction(params, 0, mgesc::Path::numeric, spec);
            const mgesc::GroundStateWavefunction closed =
                mgesc::ground_state_wavefunction(params, 0, mgesc::Path::closed_form, spec);
            json arr = json::array();
            std::string csv = "r,unperturbed,numeric_path,closed_path\n";
            for (int i = 0; i < samples; ++i) {
                const double r = rmax * static_cast<double>(i) / (samples - 1);
                const double u0 = chi(r);
                const double numeric_value = numeric(r);
                std::optional<double> closed_value;
                try {
                    closed_value = closed(r);
                } catch (const mgesc::domain_error&) {
                    // The closed exponent overflows at large r; leave the cell blank.
                }
                if (as_json) {
                    arr.push_back({{"r", r},
                                   {"unperturbed", u0},
                                   {"numeric_path", numeric_value},
                                   {"closed_path", optional_number(closed_value)}});
                } else {
                    csv += mgesc::detail::format_wide(r);
                    csv += ',';
                    csv += mgesc::detail::format_wide(u0);
                    csv += ',';
                    csv += mgesc::detail::format_wide(numeric_value);
                    csv += ',';
                    if (closed_value) csv += mgesc::detail::format_wide(*closed_value);
                    csv += '\n';
                }
            }
            write_output(as_json ? arr.dump(2) + "\n" : csv, output_path);
            return 0;
        }
    } catch (const std::invalid_argument& ex) {
        std::cerr << "error: " << ex.what() << "\n";
        return 2;
    } catch (const std::domain_error& ex) {
        std::cerr << "error: " << ex.what() << "\n";
        return 2;
    } catch (const std::exception& ex) {
        std::cerr << "error: " << ex.what() << "\n";
        return 1;
    }
    return 2;
}
