#include "app.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <sstream>
#include <thread>

namespace {

struct Options {
    std::string spectrum;
    std::string file;
    std::string criterion = "auto";
    std::string backend = "rational";
    std::string eps;
    std::string out;
    double tol = niep::kClosureTol;
    std::size_t jobs = 0;
};

void add_options(CLI::App* cmd, Options& o)
{
    auto* spectrum = cmd->add_option("--spectrum", o.spectrum, "spectrum as JSON: [re, ...] or {\"lambda\": [[re, im], ...]}");
    auto* file = cmd->add_option("--file", o.file, "JSON input file (spectrum, verify payload or {\"batch\": [...]})");
    spectrum->excludes(file);
    cmd->add_option("--criterion", o.criterion, "auto or a criterion name")->capture_default_str();
    cmd->add_option("--backend", o.backend, "rational or float")
        ->check(CLI::IsMember({"rational", "float"}))
        ->capture_default_str();
    cmd->add_option("--eps", o.eps, "explicit perturbation size for universal");
    cmd->add_option("--out", o.out, "write the result here instead of stdout");
    cmd->add_option("--tol", o.tol, "conjugate-closure tolerance in float mode")->capture_default_str();
    cmd->add_option("--jobs", o.jobs, "worker threads for batch files (0: hardware concurrency)");
}

std::string slurp(const std::string& path)
{
    std::ifstream in(path);
    if (!in)
        throw std::runtime_error("cannot read " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

int emit(const niep::app::Outcome& o, const std::string& out)
{
    std::string text = o.text;
    if (!text.empty() && text.back() != '\n')
        text += '\n';
    if (o.result.is_object() && o.result.contains("error")) {
        std::cerr << text;
        return o.code;
    }
    if (out.empty()) {
        std::cout << text;
        return o.code;
    }
    std::ofstream f(out);
    if (!f) {
        std::cerr << "error: cannot write " << out << "\n";
        return niep::app::kExitInputError;
    }
    f << text;
    return o.code;
}

} // namespace

int main(int argc, char** argv)
{
    CLI::App cli{"Constructive realizability for prescribed nonnegative matrix spectra"};
    cli.require_subcommand(1);
    Options o;
    const std::pair<const char*, const char*> commands[] = {
        {"check", "print each criterion's verdict"},
        {"realize", "build a nonnegative matrix with a certificate"},
        {"universal", "one positive matrix per allowed Jordan form"},
        {"verify", "re-run the oracle on a matrix and a spectrum"},
        {"guo", "the (n-1) m bound and its realizing matrix"},
    };
    for (const auto& [name, help] : commands)
        add_options(cli.add_subcommand(name, help), o);
    CLI11_PARSE(cli, argc, argv);

    niep::app::Job job;
    job.command = cli.get_subcommands().front()->get_name();
    job.backend = o.backend;
    job.criterion = o.criterion;
    job.tol = o.tol;
    if (!o.eps.empty())
        job.eps = o.eps;

    niep::io::Json input;
    try {
        if (!o.spectrum.empty())
            input = niep::io::Json::parse(o.spectrum);
        else if (!o.file.empty())
            input = niep::io::Json::parse(slurp(o.file));
        else {
            std::cerr << "error: one of --spectrum or --file is required\n";
            return niep::app::kExitInputError;
        }
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return niep::app::kExitInputError;
    }

    if (input.is_object() && input.contains("batch")) {
        const std::size_t workers = o.jobs ? o.jobs : std::max(1u, std::thread::hardware_concurrency());
        return emit(niep::app::run_batch(input.at("batch"), job, workers), o.out);
    }
    job.payload = job.command == "verify" ? input : niep::app::job_from_json(input, job).payload;
    return emit(niep::app::run(job), o.out);
}
