#include "siq/cli.hpp"

#include <ostream>
#include <sstream>

#include <CLI11.hpp>

#include "siq/enumerate.hpp"
#include "siq/poly.hpp"
#include "siq/quiver.hpp"
#include "siq/treelike.hpp"
#include "siq/verify.hpp"

namespace siq {

namespace {

FieldSpec field_of(int ch) {
    if (ch == 0) return FieldSpec::rationals();
    if (ch < 0 || !is_prime(unsigned(ch)))
        throw input_error("characteristic must be 0, 2, or an odd prime");
    return FieldSpec::prime_field(unsigned(ch));
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"generating sets of semi-invariants for quivers in dimension (2,...,2)"};
    app.require_subcommand(1);

    std::string file, path_text, suite = "all";
    int ch = 0, sigma_t = 1, max_deg = 8;
    int pp = 0, qq = 0, ll = 0;
    bool tv_gens = false;

    auto add_char = [&](CLI::App* cmd) {
        return cmd->add_option("--char", ch, "field characteristic: 0, 2, or an odd prime")
            ->capture_default_str();
    };

    auto* gens = app.add_subcommand("gens", "print the minimal generating set");
    gens->add_option("file", file, "quiver file")->required();
    add_char(gens);

    auto* count = app.add_subcommand("count", "print the size of the generating set");
    count->add_option("file", file, "quiver file")->required();
    add_char(count);

    std::string det_arrow;
    auto* poly = app.add_subcommand("poly", "print the trace or determinant of a closed word");
    poly->add_option("file", file, "quiver file")->required();
    auto* poly_path = poly->add_option("--path", path_text, "closed word, e.g. \"a b* c\"");
    poly->add_option("--sigma", sigma_t, "1 = trace, 2 = determinant")
        ->check(CLI::Range(1, 2))
        ->capture_default_str();
    poly->add_option("--det", det_arrow, "print the determinant of one arrow's matrix instead")
        ->excludes(poly_path);
    add_char(poly);

    auto* decomp = app.add_subcommand("decomp", "split a multilinear closed word into primitive cycles");
    decomp->add_option("file", file, "quiver file")->required();
    decomp->add_option("--path", path_text, "multilinear closed word")->required();

    auto* verify = app.add_subcommand("verify", "run exact verification suites");
    verify->add_option("file", file, "quiver file")->required();
    add_char(verify);
    verify->add_option("--suite", suite, "relations|minimality|spanning|invariance|all")
        ->check(CLI::IsMember({"relations", "minimality", "spanning", "invariance", "all"}))
        ->capture_default_str();
    verify->add_option("--max-deg", max_deg, "total degree cap for the oracles")
        ->check(CLI::Range(1, 12))
        ->capture_default_str();

    auto* twov =
        app.add_subcommand("twovertex", "p and q loops at two vertices, l arrows between them");
    twov->add_option("p", pp, "loops at the first vertex")->required();
    twov->add_option("q", qq, "loops at the second vertex")->required();
    twov->add_option("l", ll, "arrows between the vertices")->required();
    auto* twov_char = add_char(twov);
    twov->add_flag("--gens", tv_gens, "print the generating set instead of its size");

    std::vector<std::string> rev(args.rbegin(), args.rend());
    try {
        app.parse(rev);
    } catch (const CLI::ParseError& e) {
        std::ostringstream msg;
        int code = app.exit(e, msg, msg);
        (code == 0 ? out : err) << msg.str();
        return code == 0 ? 0 : 2;
    }

    try {
        if (*gens || *count) {
            Quiver q = parse_quiver_file(file);
            GeneratorSet gs = minimal_generating_set(q, field_of(ch));
            if (*gens) out << format_generator_set(q, gs);
            else out << gs.size() << "\n";
            return 0;
        }
        if (*poly) {
            Quiver q = parse_quiver_file(file);
            SymCtx ctx(q);
            if (det_arrow.empty() && path_text.empty())
                throw input_error("poly needs --path or --det");
            Poly f = det_arrow.empty() ? sigma(ctx, field_of(ch), sigma_t, parse_path(path_text))
                                       : det_poly(ctx, field_of(ch), det_arrow);
            out << format_poly(ctx, f) << "\n";
            return 0;
        }
        if (*decomp) {
            Quiver q = parse_quiver_file(file);
            PathWord w = parse_path(path_text);
            std::vector<Decomposition> decs = enumerate_decompositions(q, w);
            out << "word: " << format_path(w) << "\n";
            out << "mdeg: " << format_mdeg(mdeg(q, w)) << "\n";
            out << "decompositions: " << decs.size() << "\n";
            for (size_t n = 0; n < decs.size(); ++n) {
                Diagram g = type_diagram(q, decs[n]);
                out << "decomposition " << n + 1
                    << (diagram_admissible(g) ? " admissible" : " inadmissible") << "\n";
                for (const auto& part : decs[n].parts) out << "  part " << format_path(part) << "\n";
                out << "  diagram";
                if (g.edges.empty()) out << " -";
                for (const auto& e : g.edges)
                    out << " " << e.i + 1 << "-" << e.j + 1 << ":" << e.mark;
                out << "\n";
            }
            out << (path_admissible(q, w) ? "path admissible" : "path not admissible") << "\n";
            return 0;
        }
        if (*verify) {
            FieldSpec fs = field_of(ch);
            Quiver q = parse_quiver_file(file);
            Report all;
            auto append = [&](const Report& r) {
                all.lines.insert(all.lines.end(), r.lines.begin(), r.lines.end());
            };
            if (suite == "relations" || suite == "all") append(relation_suite(fs));
            if (suite == "minimality" || suite == "all") append(verify_minimality(q, fs, max_deg));
            if (suite == "spanning" || suite == "all") append(verify_spanning(q, fs, max_deg));
            if (suite == "invariance" || suite == "all") append(verify_invariance(q, fs));
            out << format_report(all);
            return all.all_pass() ? 0 : 1;
        }
        if (*twov) {
            if (tv_gens) {
                Quiver q = two_vertex_quiver(pp, qq, ll);
                GeneratorSet gs = two_vertex_generating_set(pp, qq, ll, field_of(ch));
                out << format_generator_set(q, gs);
            } else if (twov_char->count() > 0) {
                out << two_vertex_count(pp, qq, ll, field_of(ch)) << "\n";
            } else {
                out << "char 2: " << two_vertex_count(pp, qq, ll, FieldSpec::prime_field(2))
                    << "\n";
                out << "char not 2: " << two_vertex_count(pp, qq, ll, FieldSpec::rationals())
                    << "\n";
            }
            return 0;
        }
    } catch (const input_error& e) {
        err << "error: " << e.what() << "\n";
        return 2;
    }
    return 0;
}

}  // namespace siq
