#include "app.hpp"

#include "niep/criteria.hpp"
#include "niep/error.hpp"

#include <algorithm>
#include <atomic>
#include <thread>
#include <vector>

namespace niep::app {

namespace {

bool is_input_error(Errc c)
{
    switch (c) {
    case Errc::InvalidInput:
    case Errc::NotConjugateClosed:
    case Errc::NoPerronCandidate:
    case Errc::DimensionMismatch:
        return true;
    default:
        return false;
    }
}

Outcome failure(int code, const std::string& what, const std::string& errc = "")
{
    Outcome o;
    o.code = code;
    o.result = {{"error", what}};
    if (!errc.empty())
        o.result["code"] = errc;
    o.text = "error: " + what;
    return o;
}

Outcome json_outcome(io::Json result, int code = kExitOk)
{
    Outcome o;
    o.code = code;
    o.text = io::pretty(result);
    o.result = std::move(result);
    return o;
}

const io::Json& spectrum_payload(const io::Json& payload)
{
    if (payload.is_object() && payload.contains("spectrum"))
        return payload.at("spectrum");
    return payload;
}

template <class T>
Outcome run_check(const Job& job)
{
    const auto s = io::spectrum_from_json<T>(job.payload, job.tol);
    io::Json verdicts = io::Json::array();
    std::string text;
    bool any = false;
    for (const auto& v : check_all(s)) {
        any = any || v.pass;
        verdicts.push_back({{"criterion", std::string(criterion_name(v.criterion))}, {"pass", v.pass}, {"detail", v.detail}});
        text += std::string(criterion_name(v.criterion)) + ": " + (v.pass ? "PASS" : "FAIL") + "  (" + v.detail + ")\n";
    }
    Outcome o;
    o.code = any ? kExitOk : kExitNotApplicable;
    o.result = {{"spectrum", io::spectrum_to_json(s)}, {"verdicts", verdicts}};
    o.text = text;
    return o;
}

template <class T>
Outcome run_realize(const Job& job)
{
    const auto s = io::spectrum_from_json<T>(job.payload, job.tol);
    if (job.criterion == "auto")
        return json_outcome(io::realization_to_json(realize_auto(s)));
    const auto c = parse_criterion(job.criterion);
    if (!c)
        return failure(kExitInputError, "unknown criterion '" + job.criterion + "'");
    return json_outcome(io::realization_to_json(realize_with(s, *c)));
}

template <class T>
Outcome run_universal(const Job& job)
{
    const auto s = io::spectrum_from_json<T>(job.payload, job.tol);
    std::optional<T> eps;
    if (job.eps)
        eps = parse_scalar<T>(*job.eps);
    return json_outcome(io::universal_to_json(realize_universal(s, eps), s));
}

template <class T>
Outcome run_verify(const Job& job)
{
    const auto& p = job.payload;
    if (!p.is_object())
        return failure(kExitInputError, "verify expects an object with a matrix and a spectrum");
    const io::Json& mj = p.contains("matrix") ? p.at("matrix") : p;
    const auto m = io::matrix_from_json<T>(mj);
    io::Json sj;
    if (p.contains("spectrum"))
        sj = p.at("spectrum");
    else if (p.contains("lambda"))
        sj = io::Json{{"lambda", p.at("lambda")}};
    else
        return failure(kExitInputError, "verify needs a \"spectrum\"");
    const auto s = io::spectrum_from_json<T>(sj, job.tol);
    if (!m.is_square() || m.rows() != s.size())
        return failure(kExitInputError, "matrix order differs from the list length");
    StructuralFlags flags;
    flags.row_sums = m.row_sum.has_value();
    const auto report = full_check(m, s, flags);
    io::Json out{{"verification", io::report_to_json(report)}, {"summary", report.summary()}};
    return json_outcome(std::move(out), report.passed() ? kExitOk : kExitNotApplicable);
}

template <class T>
Outcome run_guo(const Job& job)
{
    const auto s = io::spectrum_from_json<T>(job.payload, job.tol);
    std::vector<Complex<T>> tail;
    for (std::size_t j = 0; j < s.size(); ++j)
        if (j != s.perron_index)
            tail.push_back(s.values[j]);
    Trace<T> trace;
    const auto g = guo_bound_realize(tail, &trace);
    io::Json doc = io::matrix_document(g.matrix, trace);
    std::vector<Complex<T>> values{Complex<T>(g.lambda1)};
    values.insert(values.end(), tail.begin(), tail.end());
    io::Json out{{"bound", io::scalar_to_json(g.lambda1)},
                 {"lambda_1_meets_bound", check_guo_bound(s)},
                 {"spectrum", io::spectrum_to_json(normalize(values))}};
    out.update(doc);
    return json_outcome(std::move(out));
}

template <class T>
Outcome run_typed(const Job& job)
{
    if (job.command == "check")
        return run_check<T>(job);
    if (job.command == "realize")
        return run_realize<T>(job);
    if (job.command == "universal")
        return run_universal<T>(job);
    if (job.command == "verify")
        return run_verify<T>(job);
    if (job.command == "guo")
        return run_guo<T>(job);
    return failure(kExitInputError, "unknown command '" + job.command + "'");
}

Outcome run_backend(const Job& job, const std::string& backend)
{
    if (backend == "rational")
        return run_typed<Rational>(job);
    if (backend == "float")
        return run_typed<double>(job);
    return failure(kExitInputError, "unknown backend '" + backend + "'");
}

} // namespace

Outcome run(const Job& job)
{
    std::string backend = job.backend;
    if (job.command == "verify" && job.payload.is_object()) {
        const io::Json& mj = job.payload.contains("matrix") ? job.payload.at("matrix") : job.payload;
        if (mj.is_object() && mj.contains("backend"))
            backend = mj.at("backend").get<std::string>();
    }
    try {
        try {
            return run_backend(job, backend);
        } catch (const Error& e) {
            if (e.code() != Errc::InexactInRationalMode || backend != "rational" || job.command == "verify")
                throw;
            Outcome o = run_backend(job, "float");
            if (o.result.is_object()) {
                o.result["note"] = std::string("rational construction needs an irrational value; rerun in float: ") +
                                   e.what();
                if (job.command != "check")
                    o.text = io::pretty(o.result);
            }
            return o;
        }
    } catch (const Error& e) {
        return failure(is_input_error(e.code()) ? kExitInputError : kExitNotApplicable, e.what(),
                       std::string(to_string(e.code())));
    } catch (const nlohmann::json::exception& e) {
        return failure(kExitInputError, std::string("malformed input: ") + e.what());
    }
}

Job job_from_json(const io::Json& entry, const Job& defaults)
{
    Job job = defaults;
    if (!entry.is_object()) {
        job.payload = entry;
        return job;
    }
    if (entry.contains("command"))
        job.command = entry.at("command").get<std::string>();
    if (entry.contains("backend"))
        job.backend = entry.at("backend").get<std::string>();
    if (entry.contains("criterion"))
        job.criterion = entry.at("criterion").get<std::string>();
    if (entry.contains("eps"))
        job.eps = entry.at("eps").is_string() ? entry.at("eps").get<std::string>() : entry.at("eps").dump();
    if (entry.contains("tol"))
        job.tol = entry.at("tol").get<double>();
    job.payload = job.command == "verify" ? entry : spectrum_payload(entry);
    return job;
}

Outcome run_batch(const io::Json& entries, const Job& defaults, std::size_t workers)
{
    if (!entries.is_array())
        return failure(kExitInputError, "\"batch\" must be an array");
    const std::size_t n = entries.size();
    std::vector<Outcome> outcomes(n);
    std::atomic<std::size_t> next{0};
    auto worker = [&] {
        for (std::size_t i; (i = next.fetch_add(1)) < n;) {
            try {
                outcomes[i] = run(job_from_json(entries[i], defaults));
            } catch (const nlohmann::json::exception& e) {
                outcomes[i] = failure(kExitInputError, std::string("malformed batch entry: ") + e.what());
            }
        }
    };
    const std::size_t count = std::max<std::size_t>(1, std::min(workers, n));
    std::vector<std::thread> pool;
    for (std::size_t t = 0; t + 1 < count; ++t)
        pool.emplace_back(worker);
    worker();
    for (auto& t : pool)
        t.join();

    io::Json results = io::Json::array();
    int code = kExitOk;
    for (auto& o : outcomes) {
        if (o.code == kExitInputError)
            code = kExitInputError;
        else if (o.code == kExitNotApplicable && code == kExitOk)
            code = kExitNotApplicable;
        results.push_back({{"exit", o.code}, {"result", std::move(o.result)}});
    }
    return json_outcome(io::Json{{"results", std::move(results)}}, code);
}

} // namespace niep::app
