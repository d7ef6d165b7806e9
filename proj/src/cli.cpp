#include "remile/cli.hpp"

#include "remile/corpus.hpp"
#include "remile/error.hpp"
#include "remile/indicators.hpp"
#include "remile/report.hpp"
#include "remile/synthgen.hpp"
#include "remile/text.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <cstdlib>
#include <filesystem>
#include <sstream>

namespace remile::cli {

namespace {

struct RunConfig {
    std::string publications;
    std::string citations;
    std::string economics;
    std::string groups;
    std::string aliases;
    std::string spec;
    std::string output_dir;
    int window = 3;
    std::vector<double> weights;
    std::vector<std::string> journals{"Nature", "Science"};
    std::vector<std::string> doc_types{"Article", "Letter", "Note", "Review"};
    std::vector<std::string> citing_doc_types;
    int preliminary_threshold = kDefaultPreliminaryThreshold;
    std::optional<int> observation_end;
    bool strict = false;
    bool two_sided = false;
    bool exclude_preliminary = false;
    int reference_year = kDefaultReferenceYear;
    std::uint64_t seed = synth::kFixtureSeed;
};

std::string join(const std::vector<std::string>& v)
{
    std::string out;
    for (const auto& s : v)
        out += (out.empty() ? "" : ",") + s;
    return out;
}

/// Records inputs, config and outputs of one command; written next to the outputs.
class Manifest {
public:
    void input(const std::string& path, const std::string& content)
    {
        lines_ << "input\t" << path << "\tfnv1a64:" << text::hex64(text::fnv1a64(content)) << '\n';
    }
    void config(const std::string& key, const std::string& value)
    {
        lines_ << "config\t" << key << '\t' << value << '\n';
    }
    void output(const std::string& name, const std::string& content)
    {
        lines_ << "output\t" << name << "\tfnv1a64:" << text::hex64(text::fnv1a64(content)) << '\n';
    }
    std::string str() const { return lines_.str(); }

private:
    std::ostringstream lines_;
};

class Runner {
public:
    Runner(std::string command, RunConfig cfg, std::ostream& out, std::ostream& err)
        : command_(std::move(command)), cfg_(std::move(cfg)), out_(out), err_(err),
          names_(Canonicalizer::with_defaults())
    {
        if (cfg_.output_dir.empty()) {
            const char* env = std::getenv("REMILE_OUTPUT_DIR");
            cfg_.output_dir = env && *env ? env : ".";
        }
    }

    void run()
    {
        echo_config();
        if (command_ == "synth")
            synth();
        else if (command_ == "ingest")
            ingest();
        else if (command_ == "milestones")
            milestones();
        else if (command_ == "correlate")
            correlate();
        else if (command_ == "figure")
            figure();
        else
            throw ConfigError("unknown command '" + command_ + "'");
        emit(command_ + ".manifest.tsv", manifest_.str(), false);
    }

private:
    std::string read_input(const std::string& flag, const std::string& path)
    {
        if (path.empty())
            throw ConfigError("'" + command_ + "' requires --" + flag);
        auto content = text::read_file(path);
        manifest_.input(path, content);
        return content;
    }

    void emit(const std::string& name, const std::string& content, bool record = true)
    {
        std::filesystem::create_directories(cfg_.output_dir);
        const auto path = (std::filesystem::path(cfg_.output_dir) / name).string();
        text::write_file(path, content);
        if (record)
            manifest_.output(name, content);
        out_ << "wrote " << path << '\n';
    }

    void echo_config()
    {
        manifest_.config("command", command_);
        manifest_.config("window", std::to_string(cfg_.window));
        std::vector<std::string> w;
        const auto win = window();
        for (double x : win.weights())
            w.push_back(text::format_double(x));
        manifest_.config("weights", join(w));
        manifest_.config("journals", join(cfg_.journals));
        manifest_.config("doc_types", join(cfg_.doc_types));
        manifest_.config("citing_doc_types", join(cfg_.citing_doc_types));
        manifest_.config("preliminary_threshold", std::to_string(cfg_.preliminary_threshold));
        manifest_.config("observation_end",
                         cfg_.observation_end ? std::to_string(*cfg_.observation_end) : "");
        manifest_.config("strict", cfg_.strict ? "true" : "false");
        manifest_.config("sidedness", cfg_.two_sided ? "two-sided" : "one-sided");
        manifest_.config("include_preliminary", cfg_.exclude_preliminary ? "false" : "true");
        manifest_.config("reference_year", std::to_string(cfg_.reference_year));
        manifest_.config("seed", std::to_string(cfg_.seed));
    }

    VitalityWindow window() const
    {
        if (cfg_.weights.empty())
            return VitalityWindow(cfg_.window);
        if (static_cast<int>(cfg_.weights.size()) != cfg_.window)
            throw ConfigError("--weights has " + std::to_string(cfg_.weights.size()) +
                              " entries but --window is " + std::to_string(cfg_.window));
        return VitalityWindow(cfg_.weights);
    }

    ReportConfig report_config()
    {
        ReportConfig rc;
        rc.window = window();
        if (cfg_.preliminary_threshold < 0)
            throw ConfigError("--preliminary-threshold must be >= 0");
        rc.preliminary_threshold = cfg_.preliminary_threshold;
        rc.include_preliminary = !cfg_.exclude_preliminary;
        rc.selection.journals.clear();
        for (const auto& j : cfg_.journals)
            rc.selection.journals.insert(names_.canonical(j));
        rc.selection.doc_types.clear();
        for (const auto& d : cfg_.doc_types)
            rc.selection.doc_types.insert(DocType::parse(d));
        if (!cfg_.citing_doc_types.empty()) {
            std::set<DocType> citing;
            for (const auto& d : cfg_.citing_doc_types)
                citing.insert(DocType::parse(d));
            rc.selection.citing_doc_types = std::move(citing);
        }
        return rc;
    }

    Corpus load_corpus(Diagnostics& diag)
    {
        if (!cfg_.aliases.empty()) {
            std::istringstream in(read_input("aliases", cfg_.aliases));
            names_.load_aliases(in);
        }
        auto pubs = parse_publications(read_input("publications", cfg_.publications), names_);
        auto links = parse_citations(read_input("citations", cfg_.citations), pubs,
                                     cfg_.strict ? LinkPolicy::Strict : LinkPolicy::Lenient, diag);
        return build_corpus(std::move(pubs), std::move(links), cfg_.observation_end, diag);
    }

    std::vector<CountryGroup> load_groups()
    {
        if (cfg_.groups.empty())
            return default_groups();
        return parse_groups(read_input("groups", cfg_.groups), names_);
    }

    MilestoneTable table(std::vector<VitalityProfile>* profiles = nullptr)
    {
        Diagnostics diag;
        const auto corpus = load_corpus(diag);
        const auto rc = report_config();
        auto t = milestone_table(corpus, load_groups(), rc, diag, profiles);
        diag.write(err_);
        return t;
    }

    void ingest()
    {
        Diagnostics diag;
        const auto corpus = load_corpus(diag);
        diag.write(err_);
        std::ostringstream summary;
        summary << "key\tvalue\n"
                << "publications\t" << corpus.publications().size() << '\n'
                << "links\t" << corpus.links().size() << '\n'
                << "cited_publications\t" << corpus.reverse_index().size() << '\n'
                << "observation_end\t" << corpus.observation_end() << '\n';
        for (const auto& [code, n] : diag.counters())
            if (code != "publications" && code != "links")
                summary << code << '\t' << n << '\n';
        out_ << summary.str();
        emit("ingest_summary.tsv", summary.str());
    }

    void milestones()
    {
        std::vector<VitalityProfile> profiles;
        const auto t = table(&profiles);

        std::ostringstream tsv, prof, json;
        write_milestones_tsv(tsv, t);
        write_profiles_tsv(prof, profiles);
        std::vector<Milestone> all;
        for (const auto& r : t.rows) {
            if (r.iv)
                all.push_back(*r.iv);
            if (r.review)
                all.push_back(*r.review);
        }
        write_milestones_json(json, all);
        emit("milestones.tsv", tsv.str());
        emit("profiles.tsv", prof.str());
        emit("milestones.json", json.str());
    }

    void correlate()
    {
        const auto t = table();
        const auto econ = parse_economics(read_input("economics", cfg_.economics), names_);
        const auto results = correlation_suite(t, econ, !cfg_.exclude_preliminary);

        std::ostringstream tsv;
        write_correlations_tsv(tsv, results);
        emit("correlations.tsv", tsv.str());

        const char* side = cfg_.two_sided ? "p(two-sided)" : "p(one-sided)";
        out_ << "analysis\tN\tr\t" << side << '\n';
        for (const auto& a : results) {
            out_ << a.name << '\t' << a.n << '\t';
            if (a.result) {
                const double p = cfg_.two_sided ? a.result->p_two : a.result->p_one;
                out_ << text::format_fixed(a.result->r, 2) << '\t' << text::format_fixed(p, 4);
            } else {
                out_ << "-\t-";
            }
            if (!a.note.empty())
                out_ << '\t' << a.note;
            out_ << '\n';
        }
    }

    void figure()
    {
        const auto fig = figure_data(table(), cfg_.reference_year);
        emit("figure.json", figure_to_json(fig));
        emit("figure.svg", render_figure_svg(fig));
    }

    void synth()
    {
        if (!cfg_.spec.empty()) {
            const auto specs = synth::parse_specs(read_input("spec", cfg_.spec));
            const auto corpus = synth::generate(specs, cfg_.seed);
            emit("publications.tsv", corpus.publications_tsv);
            emit("citations.tsv", corpus.citations_tsv);
            return;
        }
        const auto fx = synth::bric_n11_fixture(cfg_.seed);
        emit("publications.tsv", fx.corpus.publications_tsv);
        emit("citations.tsv", fx.corpus.citations_tsv);
        emit("economics.tsv", fx.economics_tsv);
        emit("groups.json", fx.groups_json);
    }

    std::string command_;
    RunConfig cfg_;
    std::ostream& out_;
    std::ostream& err_;
    Canonicalizer names_;
    Manifest manifest_;
};

} // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err)
{
    CLI::App app{"Research excellence milestones from bibliographic corpora", "remile"};
    app.require_subcommand(1, 1);
    app.fallthrough();

    RunConfig cfg;
    int observation_end = 0;
    app.add_option("--publications", cfg.publications, "publications TSV");
    app.add_option("--citations", cfg.citations, "citations TSV");
    app.add_option("--economics", cfg.economics, "economic indicators TSV");
    app.add_option("--groups", cfg.groups, "country groups JSON (default: BRIC and N-11)");
    app.add_option("--aliases", cfg.aliases, "alias TSV (alias, canonical)");
    app.add_option("--spec", cfg.spec, "trajectory spec JSON for synth (default: BRIC/N-11 fixture)");
    app.add_option("--output-dir", cfg.output_dir, "output directory (env REMILE_OUTPUT_DIR)");
    app.add_option("--window", cfg.window, "impact vitality window in years")->capture_default_str();
    app.add_option("--weights", cfg.weights, "recency weights, newest first")->delimiter(',');
    app.add_option("--journals", cfg.journals, "cited journals")->delimiter(',')->capture_default_str();
    app.add_option("--doc-types", cfg.doc_types, "cited document types")->delimiter(',')->capture_default_str();
    app.add_option("--citing-doc-types", cfg.citing_doc_types, "restrict citing document types")->delimiter(',');
    app.add_option("--preliminary-threshold", cfg.preliminary_threshold,
                   "terminal runs this short or shorter are preliminary")
        ->capture_default_str();
    auto* obs = app.add_option("--observation-end", observation_end, "last analyzable citing year");
    app.add_flag("--strict", cfg.strict, "reject dangling citation links");
    auto* one = app.add_flag("--one-sided", "report one-sided p-values (default)");
    auto* two = app.add_flag("--two-sided", cfg.two_sided, "report two-sided p-values");
    one->excludes(two);
    app.add_flag("--exclude-preliminary", cfg.exclude_preliminary,
                 "leave preliminary milestones out of correlations");
    app.add_option("--reference-year", cfg.reference_year, "reference line year for figures")
        ->capture_default_str();
    app.add_option("--seed", cfg.seed, "synthetic generator seed")->capture_default_str();

    app.add_subcommand("ingest", "parse and validate a corpus, print diagnostics");
    app.add_subcommand("milestones", "milestones.tsv, profiles.tsv, milestones.json");
    app.add_subcommand("correlate", "correlations.tsv against economic indicators");
    app.add_subcommand("figure", "figure.json and figure.svg");
    app.add_subcommand("synth", "write the synthetic fixture or a generated corpus");

    try {
        std::vector<std::string> reversed(args.rbegin(), args.rend());
        app.parse(reversed);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return 0;
    } catch (const CLI::ParseError& e) {
        err << "error: " << e.what() << "\n\n" << app.help();
        return 1;
    }
    if (obs->count() > 0)
        cfg.observation_end = observation_end;

    const auto command = app.get_subcommands().front()->get_name();
    try {
        Runner(command, std::move(cfg), out, err).run();
    } catch (const ConfigError& e) {
        err << "error: " << e.what() << '\n';
        return 1;
    } catch (const NumericalError& e) {
        err << "numerical error: " << e.what() << '\n';
        return 3;
    } catch (const DataError& e) {
        err << "data error: " << e.what() << '\n';
        return 2;
    } catch (const std::filesystem::filesystem_error& e) {
        err << "error: " << e.what() << '\n';
        return 1;
    }
    return 0;
}

} // namespace remile::cli
