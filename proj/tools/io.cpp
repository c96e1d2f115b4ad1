#include "io.hpp"

#include "niep/error.hpp"

#include <algorithm>

namespace niep::io {

template <class T>
T scalar_from_json(const Json& j)
{
    std::string text;
    if (j.is_string())
        text = j.get<std::string>();
    else if (j.is_number())
        text = j.dump();
    else
        throw Error(Errc::InvalidInput, "expected a number, got " + j.dump());
    if constexpr (is_exact_v<T>) {
        return parse_scalar<Rational>(text);
    } else {
        if (text.find('/') != std::string::npos)
            return parse_scalar<Rational>(text).get_d();
        return parse_scalar<double>(text);
    }
}

template <class T>
Json scalar_to_json(const T& x)
{
    return to_string(x);
}

template <class T>
Spectrum<T> spectrum_from_json(const Json& j, double tol)
{
    const Json* list = &j;
    if (j.is_object()) {
        if (!j.contains("lambda"))
            throw Error(Errc::InvalidInput, "spectrum object needs a \"lambda\" member");
        list = &j.at("lambda");
    }
    if (!list->is_array() || list->empty())
        throw Error(Errc::InvalidInput, "spectrum must be a nonempty array");
    std::vector<Complex<T>> values;
    for (const auto& z : *list) {
        if (z.is_array()) {
            if (z.size() != 2)
                throw Error(Errc::InvalidInput, "complex entries are [re, im] pairs");
            values.emplace_back(scalar_from_json<T>(z[0]), scalar_from_json<T>(z[1]));
        } else {
            values.emplace_back(scalar_from_json<T>(z));
        }
    }
    return normalize(values, tol);
}

template <class T>
Json spectrum_to_json(const Spectrum<T>& s)
{
    Json list = Json::array();
    for (const auto& z : s.values)
        list.push_back(Json::array({scalar_to_json(z.re), scalar_to_json(z.im)}));
    return Json{{"lambda", list}};
}

template <class T>
Json entries_to_json(const Matrix<T>& m)
{
    Json rows = Json::array();
    for (std::size_t i = 0; i < m.rows(); ++i) {
        Json row = Json::array();
        for (std::size_t j = 0; j < m.cols(); ++j)
            row.push_back(scalar_to_json(m(i, j)));
        rows.push_back(std::move(row));
    }
    return rows;
}

template <class T>
Matrix<T> matrix_from_json(const Json& j)
{
    const Json& rows = j.is_object() ? j.at("entries") : j;
    if (!rows.is_array() || rows.empty() || !rows[0].is_array())
        throw Error(Errc::InvalidInput, "matrix entries must be an array of rows");
    const std::size_t n = rows.size();
    const std::size_t m = rows[0].size();
    Matrix<T> out(n, m);
    for (std::size_t i = 0; i < n; ++i) {
        if (!rows[i].is_array() || rows[i].size() != m)
            throw Error(Errc::InvalidInput, "ragged matrix rows");
        for (std::size_t k = 0; k < m; ++k)
            out(i, k) = scalar_from_json<T>(rows[i][k]);
    }
    if (j.is_object() && j.contains("row_sum") && !j.at("row_sum").is_null())
        out.row_sum = scalar_from_json<T>(j.at("row_sum"));
    return out;
}

template <class T>
Json trace_to_json(const Trace<T>& t)
{
    Json steps = Json::array();
    for (const auto& s : t.steps) {
        Json step{{"description", s.description}};
        if (!s.matrices.empty()) {
            Json mats = Json::object();
            for (const auto& nm : s.matrices)
                mats[nm.name] = entries_to_json(nm.matrix);
            step["matrices"] = std::move(mats);
        }
        steps.push_back(std::move(step));
    }
    return Json{{"theorem", t.theorem}, {"steps", steps}};
}

template <class T>
Json matrix_document(const Matrix<T>& m, const Trace<T>& certificate)
{
    Json doc{{"order", m.rows()}, {"entries", entries_to_json(m)}, {"backend", std::string(backend_name<T>())}};
    doc["row_sum"] = m.row_sum ? scalar_to_json(*m.row_sum) : Json(nullptr);
    doc["certificate"] = trace_to_json(certificate);
    return doc;
}

template <class T>
Json realization_to_json(const Realization<T>& r)
{
    Json doc = matrix_document(r.matrix, r.certificate);
    doc["criterion"] = std::string(criterion_name(r.criterion));
    doc["perron_shifted"] = r.perron_shifted;
    doc["spectrum"] = spectrum_to_json(r.realized);
    doc["verification"] = report_to_json(r.report);
    if (r.perron_shifted)
        doc["note"] = "no implemented criterion applies to the list itself; realizes the Perron-shifted list " +
                      to_string(r.realized);
    return doc;
}

Json report_to_json(const VerificationReport& r)
{
    Json out{{"pass", r.passed()}};
    if (r.char_poly)
        out["char_poly"] = {{"match", r.char_poly->match},
                            {"max_deviation", r.char_poly->max_deviation},
                            {"worst_index", r.char_poly->worst_index}};
    if (r.nonnegative)
        out["nonnegative"] = {{"pass", r.nonnegative->pass}, {"most_negative", r.nonnegative->extreme_entry}};
    if (r.positive)
        out["positive"] = {{"pass", r.positive->pass}, {"smallest", r.positive->extreme_entry}};
    if (r.row_sum)
        out["row_sum"] = {{"pass", r.row_sum->pass},
                          {"alpha", r.row_sum->alpha},
                          {"max_deviation", r.row_sum->max_deviation}};
    if (r.symmetric)
        out["symmetric"] = *r.symmetric;
    return out;
}

namespace {

bool flat(const Json& j)
{
    return std::none_of(j.begin(), j.end(), [](const Json& x) { return x.is_structured(); });
}

void pretty_into(const Json& j, std::string& out, std::size_t depth)
{
    const std::string pad(2 * depth + 2, ' ');
    const std::string close(2 * depth, ' ');
    if (j.is_array()) {
        if (j.empty() || flat(j)) {
            out += j.dump();
            return;
        }
        out += "[\n";
        for (std::size_t i = 0; i < j.size(); ++i) {
            out += pad;
            pretty_into(j[i], out, depth + 1);
            out += i + 1 < j.size() ? ",\n" : "\n";
        }
        out += close + "]";
    } else if (j.is_object()) {
        if (j.empty()) {
            out += "{}";
            return;
        }
        out += "{\n";
        std::size_t i = 0;
        for (const auto& [key, value] : j.items()) {
            out += pad + Json(key).dump() + ": ";
            pretty_into(value, out, depth + 1);
            out += ++i < j.size() ? ",\n" : "\n";
        }
        out += close + "}";
    } else {
        out += j.dump();
    }
}

} // namespace

std::string pretty(const Json& j)
{
    std::string out;
    pretty_into(j, out, 0);
    return out;
}

template <class T>
Json universal_to_json(const UniversalResult<T>& r, const Spectrum<T>& s)
{
    Json forms = Json::array();
    for (const auto& f : r.forms) {
        Json jordan = Json::array();
        Json chains = Json::array();
        for (std::size_t k = 0; k < f.target.entries.size(); ++k) {
            const auto& e = f.target.entries[k];
            const Json value = Json::array({scalar_to_json(e.value.re), scalar_to_json(e.value.im)});
            jordan.push_back({{"eigenvalue", value}, {"blocks", e.blocks}});
            chains.push_back({{"eigenvalue", value}, {"ranks", f.chains[k].ranks}, {"blocks", f.chains[k].blocks}});
        }
        forms.push_back({{"jordan", jordan},
                         {"eps", scalar_to_json(f.eps)},
                         {"entries", entries_to_json(f.matrix)},
                         {"rank_chains", chains}});
    }
    Json doc{{"spectrum", spectrum_to_json(s)}, {"backend", std::string(backend_name<T>())}};
    doc["base"] = matrix_document(r.base.matrix, r.base.certificate);
    doc["forms"] = std::move(forms);
    return doc;
}

#define NIEP_INSTANTIATE(T)                                                                                   \
    template T scalar_from_json<T>(const Json&);                                                              \
    template Json scalar_to_json(const T&);                                                                   \
    template Spectrum<T> spectrum_from_json<T>(const Json&, double);                                          \
    template Json spectrum_to_json(const Spectrum<T>&);                                                       \
    template Json entries_to_json(const Matrix<T>&);                                                          \
    template Matrix<T> matrix_from_json<T>(const Json&);                                                      \
    template Json trace_to_json(const Trace<T>&);                                                             \
    template Json matrix_document(const Matrix<T>&, const Trace<T>&);                                         \
    template Json realization_to_json(const Realization<T>&);                                                 \
    template Json universal_to_json(const UniversalResult<T>&, const Spectrum<T>&);

NIEP_INSTANTIATE(double)
NIEP_INSTANTIATE(Rational)

} // namespace niep::io
