// icbound: exact bounds, certificates and scheme simulations for index
// coding instances with plain or coded side information.
#include <chrono>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"

#include "icbound/json_io.hpp"
#include "icbound/schemes.hpp"

namespace icb = icbound;
using icb::ojson;

namespace {

icb::Field parse_field(const std::string& spec) {
    auto caret = spec.find('^');
    try {
        if (caret == std::string::npos) return icb::Field::make(std::stol(spec), 1);
        return icb::Field::make(std::stol(spec.substr(0, caret)),
                                std::stoi(spec.substr(caret + 1)));
    } catch (const std::invalid_argument&) {
        throw icb::ParseError("field spec must be p or p^ell: " + spec);
    }
}

icb::IccsiInstance as_iccsi(const icb::LoadedInstance& in, const icb::Field& f) {
    if (in.iccsi) return *in.iccsi;
    if (in.icsi) return icb::embed_iccsi(*in.icsi, f);
    return icb::embed_iccsi(icb::from_digraph(*in.digraph), f);
}

std::vector<int> receivers_of(icb::rmask mask) {
    std::vector<int> out;
    for (int j = 0; j < 32; ++j)
        if (mask >> j & 1) out.push_back(j + 1);
    return out;
}

ojson vectors_json(const std::vector<icb::fvec>& vs) {
    ojson a = ojson::array();
    for (const auto& v : vs) a.push_back(std::vector<long>(v.begin(), v.end()));
    return a;
}

ojson weights_json(const std::vector<icb::Rat>& ws) {
    ojson a = ojson::array();
    for (const auto& w : ws) a.push_back(icb::rat_to_string(w));
    return a;
}

ojson masks_json(const std::vector<icb::rmask>& ms) {
    ojson a = ojson::array();
    for (icb::rmask m : ms) a.push_back(receivers_of(m));
    return a;
}

ojson cover_json(const icb::CoverCert& c) {
    ojson j;
    j["cliques"] = masks_json(c.cliques);
    j["vectors"] = vectors_json(c.vectors);
    j["weights"] = weights_json(c.weights);
    return j;
}

ojson cert_json(const icb::BoundReport& rep, const std::string& name) {
    if (rep.cover_certs.count(name)) return cover_json(rep.cover_certs.at(name));
    if (rep.local_certs.count(name)) {
        const auto& c = rep.local_certs.at(name);
        ojson j = cover_json(c.cover);
        j["k"] = icb::rat_to_string(c.k);
        j["exact"] = c.exact;
        return j;
    }
    if (rep.multicast_certs.count(name)) {
        const auto& c = rep.multicast_certs.at(name);
        ojson j;
        j["groups"] = masks_json(c.groups);
        j["weights"] = weights_json(c.weights);
        return j;
    }
    const auto& c = rep.part_certs.at(name);
    ojson j;
    j["groups"] = masks_json(c.groups.groups);
    j["group_weights"] = weights_json(c.groups.weights);
    j["t"] = weights_json(c.t);
    ojson cov = cover_json(c.cover);
    j["cliques"] = cov["cliques"];
    j["vectors"] = cov["vectors"];
    j["clique_weights"] = cov["weights"];
    j["exact"] = c.exact;
    return j;
}

std::string render_table(const std::vector<std::pair<std::string, std::string>>& rows) {
    size_t w = 9;
    for (const auto& [k, v] : rows) w = std::max(w, k.size());
    std::ostringstream out;
    out << std::left;
    out << "parameter";
    for (size_t i = 9; i < w + 2; ++i) out << ' ';
    out << "value\n";
    for (const auto& [k, v] : rows) {
        out << k;
        for (size_t i = k.size(); i < w + 2; ++i) out << ' ';
        out << v << "\n";
    }
    return out.str();
}

void emit(const ojson& j, const std::string& format) {
    if (format == "table") {
        std::vector<std::pair<std::string, std::string>> rows;
        for (auto it = j.begin(); it != j.end(); ++it)
            rows.push_back({it.key(), it.value().is_string()
                                          ? it.value().get<std::string>()
                                          : it.value().dump()});
        std::cout << render_table(rows);
    } else {
        std::cout << j.dump(2) << "\n";
    }
}

icb::Design design_for(const icb::LoadedInstance& in,
                       const std::string& design_path) {
    if (!design_path.empty())
        return icb::design_from_json(icb::read_json_file(design_path));
    if (!in.icsi) throw icb::ParseError("deriving a design needs an ICSI instance");
    // candidate blocks: the distinct sets X_i together with the demand
    std::set<std::vector<int>> blocks;
    for (int i = 0; i < in.icsi->m; ++i) {
        std::vector<int> b = in.icsi->side_info[i];
        b.push_back(in.icsi->f[i]);
        std::sort(b.begin(), b.end());
        blocks.insert(b);
    }
    return icb::validate_design(in.icsi->n, {blocks.begin(), blocks.end()}, 2);
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"exact index-coding bounds, certificates and simulations"};
    app.require_subcommand(1);

    std::string input, field_spec = "2", format = "json", params_csv, design_path;
    std::string scheme = "clique", xa_csv, out_path;
    std::uint64_t budget = 0, seed = 0;
    int plane_order = 0, trials = 100;
    long pchar = 2;
    bool distribution = false, all_params = false, with_certs = false;
    bool fractional = false, timing = false;

    auto budget_of = [&]() {
        icb::SearchBudget b = icb::SearchBudget::standard();
        if (budget > 0) b.max_ops = budget;
        return b;
    };

    auto* cmd_minrank = app.add_subcommand("minrank", "exact min-rank of an instance");
    cmd_minrank->add_option("input", input)->required();
    cmd_minrank->add_option("--field", field_spec, "p or p^ell (default 2)");
    cmd_minrank->add_flag("--distribution", distribution, "full rank histogram");
    cmd_minrank->add_option("--budget", budget, "search budget override");
    cmd_minrank->add_flag("--timing", timing, "include elapsed milliseconds");
    cmd_minrank->add_option("--format", format);

    auto* cmd_kappa = app.add_subcommand("kappa", "ICCSI min-rank with certificates");
    cmd_kappa->add_option("input", input)->required();
    cmd_kappa->add_option("--field", field_spec);
    cmd_kappa->add_option("--budget", budget);
    cmd_kappa->add_flag("--timing", timing);
    cmd_kappa->add_option("--format", format);

    auto* cmd_bounds = app.add_subcommand("bounds", "clique and multicast bounds");
    cmd_bounds->add_option("input", input)->required();
    cmd_bounds->add_option("--field", field_spec);
    cmd_bounds->add_option("--params", params_csv, "comma-separated parameter names");
    cmd_bounds->add_flag("--all", all_params);
    cmd_bounds->add_flag("--certificates", with_certs);
    cmd_bounds->add_option("--budget", budget);
    cmd_bounds->add_option("--format", format);

    auto* cmd_design = app.add_subcommand("design", "construct or validate designs");
    cmd_design->add_option("input", input, "design file to validate");
    cmd_design->add_option("--plane", plane_order, "emit PG(2,r)");
    cmd_design->add_option("--t", pchar, "t parameter for validation (default 2)");
    cmd_design->add_option("--format", format);

    auto* cmd_dbound = app.add_subcommand("design-bound", "rank bound from a design");
    cmd_dbound->add_option("input", input)->required();
    cmd_dbound->add_option("design", design_path)->required();
    cmd_dbound->add_option("--p", pchar)->required();
    cmd_dbound->add_option("--format", format);

    auto* cmd_secrecy = app.add_subcommand("secrecy", "plane secrecy verification");
    cmd_secrecy->add_option("input", input)->required();
    cmd_secrecy->add_option("--p", pchar)->required();
    cmd_secrecy->add_option("--design", design_path, "design file (derived if omitted)");
    cmd_secrecy->add_option("--format", format);

    auto* cmd_adv = app.add_subcommand("adversary", "eavesdropper hypotheses check");
    cmd_adv->add_option("input", input)->required();
    cmd_adv->add_option("--xa", xa_csv, "adversary side information, e.g. 1,2");
    cmd_adv->add_option("--p", pchar)->required();
    cmd_adv->add_option("--design", design_path);
    cmd_adv->add_option("--format", format);

    auto* cmd_sim = app.add_subcommand("simulate", "run an achievable scheme");
    cmd_sim->add_option("input", input)->required();
    cmd_sim->add_option("--scheme", scheme,
                        "clique | local | multicast | partitioned-local");
    cmd_sim->add_flag("--fractional", fractional);
    cmd_sim->add_option("--trials", trials);
    cmd_sim->add_option("--seed", seed);
    cmd_sim->add_option("--field", field_spec);
    cmd_sim->add_option("--budget", budget);
    cmd_sim->add_option("--format", format);

    auto* cmd_reduce = app.add_subcommand("reduce", "tau decision and contraction bound");
    cmd_reduce->add_option("input", input)->required();
    cmd_reduce->add_option("--field", field_spec, "must satisfy q > n");
    cmd_reduce->add_option("--format", format);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        auto started = std::chrono::steady_clock::now();
        auto elapsed_ms = [&]() {
            return std::chrono::duration_cast<std::chrono::milliseconds>(
                       std::chrono::steady_clock::now() - started)
                .count();
        };
        if (cmd_minrank->parsed()) {
            icb::Field f = parse_field(field_spec);
            icb::LoadedInstance in = icb::load_instance_file(input);
            icb::FittingPattern pat =
                in.digraph ? icb::FittingPattern::of_digraph(*in.digraph)
                           : icb::FittingPattern::of_hypergraph(icb::to_hypergraph(
                                 in.icsi ? *in.icsi
                                         : throw icb::ParseError(
                                               "minrank expects an icsi or digraph file")));
            int lb = 1;
            if (in.digraph && in.digraph->n <= 16) lb = icb::alpha(*in.digraph);
            auto res = icb::minrank(pat, f, budget_of(), lb);
            ojson j;
            j["value"] = res.value;
            j["certificate"] = icb::matrix_to_json(res.certificate);
            if (distribution) {
                ojson d;
                for (const auto& [r, c] : icb::rank_distribution(pat, f, budget_of()))
                    d[std::to_string(r)] = c;
                j["distribution"] = d;
            }
            if (timing) j["elapsed_ms"] = elapsed_ms();
            emit(j, format);
        } else if (cmd_kappa->parsed()) {
            icb::Field f = parse_field(field_spec);
            icb::IccsiInstance inst = as_iccsi(icb::load_instance_file(input), f);
            auto res = icb::kappa(inst, budget_of());
            ojson j;
            j["value"] = res.value;
            j["A"] = icb::matrix_to_json(res.a);
            j["encoder"] = icb::matrix_to_json(res.encoder);
            if (timing) j["elapsed_ms"] = elapsed_ms();
            emit(j, format);
        } else if (cmd_bounds->parsed()) {
            icb::Field f = parse_field(field_spec);
            icb::IccsiInstance inst = as_iccsi(icb::load_instance_file(input), f);
            std::vector<std::string> params;
            if (all_params || params_csv.empty()) {
                params = icb::all_bound_names();
            } else {
                std::stringstream ss(params_csv);
                std::string tok;
                while (std::getline(ss, tok, ',')) params.push_back(tok);
            }
            icb::BoundReport rep = icb::compute_bounds(inst, params, budget_of());
            ojson j;
            for (const std::string& name : rep.order)
                j[name] = icb::rat_to_string(rep.values.at(name));
            if (with_certs) {
                ojson certs;
                for (const std::string& name : rep.order)
                    certs[name] = cert_json(rep, name);
                j["certificates"] = certs;
            }
            emit(j, format);
        } else if (cmd_design->parsed()) {
            if (plane_order > 0) {
                emit(icb::design_to_json(icb::projective_plane(plane_order)), format);
            } else if (!input.empty()) {
                icb::Design d = icb::design_from_json(icb::read_json_file(input));
                emit(icb::design_to_json(d), format);
            } else {
                throw icb::ParseError("design needs --plane r or a design file");
            }
        } else if (cmd_dbound->parsed()) {
            icb::LoadedInstance in = icb::load_instance_file(input);
            if (!in.icsi) throw icb::ParseError("design-bound expects an icsi instance");
            icb::Design d = icb::design_from_json(icb::read_json_file(design_path));
            auto contains = icb::contains_design(*in.icsi, d);
            auto res = icb::design_bound(*in.icsi, d, pchar);
            ojson j;
            j["bound"] = res.bound;
            j["klemm_limit"] = icb::rat_to_string(icb::Rat(d.b() + 1) / 2);
            j["contains"] = contains.contains;
            j["coincides"] = contains.coincides;
            j["encoder"] = icb::matrix_to_json(res.encoder);
            emit(j, format);
        } else if (cmd_secrecy->parsed()) {
            icb::LoadedInstance in = icb::load_instance_file(input);
            if (!in.icsi) throw icb::ParseError("secrecy expects an icsi instance");
            icb::Design d = design_for(in, design_path);
            auto rep = icb::secrecy_check(*in.icsi, d, pchar);
            ojson j;
            j["pass"] = rep.pass;
            j["pairs_checked"] = rep.pairs_checked;
            j["vectors_tried"] = rep.vectors_tried;
            emit(j, format);
        } else if (cmd_adv->parsed()) {
            icb::LoadedInstance in = icb::load_instance_file(input);
            icb::Design d = design_for(in, design_path);
            std::vector<int> xa;
            if (!xa_csv.empty()) {
                std::stringstream ss(xa_csv);
                std::string tok;
                while (std::getline(ss, tok, ',')) xa.push_back(std::stoi(tok));
            }
            auto rep = icb::adversary_check(d, xa, pchar);
            ojson j;
            j["size_ok"] = rep.size_ok;
            j["blocks_ok"] = rep.blocks_ok;
            if (rep.violating_block) j["violating_block"] = *rep.violating_block;
            j["safe"] = rep.safe;
            j["exhaustive_confirmed"] = rep.exhaustive_confirmed;
            emit(j, format);
        } else if (cmd_sim->parsed()) {
            icb::Field f = parse_field(field_spec);
            icb::IccsiInstance inst = as_iccsi(icb::load_instance_file(input), f);
            icb::SchemeSpec spec;
            spec.fractional = fractional;
            icb::Rat value;
            if (scheme == "clique") {
                spec.kind = icb::SchemeKind::CliqueCover;
                auto cat = icb::enumerate_cliques(inst, budget_of());
                auto [v, c] = fractional ? icb::phi_f(inst, cat) : icb::phi(inst, cat);
                value = v;
                spec.cover = c;
            } else if (scheme == "local") {
                spec.kind = icb::SchemeKind::LocalClique;
                auto cat = icb::enumerate_cliques(inst, budget_of());
                auto [v, c] = fractional ? icb::phi_lf(inst, cat, budget_of())
                                         : icb::phi_l(inst, cat, budget_of());
                value = v;
                spec.local = c;
            } else if (scheme == "multicast") {
                spec.kind = icb::SchemeKind::PartitionMulticast;
                auto [v, c] = fractional ? icb::phi_p_f(inst) : icb::phi_p(inst);
                value = v;
                spec.groups = c;
            } else if (scheme == "partitioned-local") {
                spec.kind = icb::SchemeKind::PartitionedLocal;
                auto cat = icb::enumerate_cliques(inst, budget_of());
                auto [v, c] = fractional ? icb::phi_p_lf(inst, cat, budget_of())
                                         : icb::phi_p_l(inst, cat, budget_of());
                value = v;
                spec.part = c;
            } else {
                throw icb::ParseError("unknown scheme: " + scheme);
            }
            auto rep = icb::simulate(inst, spec, trials, seed);
            ojson j;
            j["scheme"] = scheme;
            j["fractional"] = fractional;
            j["value"] = icb::rat_to_string(value);
            j["trials"] = rep.trials;
            j["failures"] = rep.failures;
            j["words"] = rep.words;
            j["subsymbols"] = rep.subsymbols;
            j["rate"] = icb::rat_to_string(rep.rate);
            j["r1"] = rep.r1;
            j["r2"] = rep.r2;
            j["extended_field"] = rep.extended;
            j["seed"] = seed;
            emit(j, format);
        } else if (cmd_reduce->parsed()) {
            icb::Field f = parse_field(field_spec);
            icb::LoadedInstance in = icb::load_instance_file(input);
            icb::Digraph g = in.digraph ? *in.digraph
                                        : icb::to_digraph(in.icsi ? *in.icsi
                                                                  : throw icb::ParseError(
                                                                        "reduce expects a "
                                                                        "digraph or icsi"));
            auto dec = icb::decide_minrank_n_minus_1(g, f);
            ojson j;
            j["minrank_is_n_minus_1"] = dec.kind == icb::TauDecision::MinrankIsNMinus1;
            j["reason"] = dec.reason;
            if (dec.certificate) {
                j["certificate"] = icb::matrix_to_json(*dec.certificate);
                j["certificate_rank"] = icb::rank(*dec.certificate);
            }
            emit(j, format);
        }
    } catch (const icb::Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
