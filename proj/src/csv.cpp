#include "adaptid/csv.hpp"

#include <charconv>
#include <limits>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace adaptid {

namespace {

std::vector<std::string> split_line(const std::string& line)
{
    std::vector<std::string> out;
    std::string cell;
    std::istringstream ss(line);
    while (std::getline(ss, cell, ','))
        out.push_back(cell);
    if (!line.empty() && line.back() == ',')
        out.emplace_back();
    return out;
}

void require_header(const CsvTable& t, const std::vector<std::string>& expected, const std::filesystem::path& path)
{
    if (t.header != expected)
        throw InvalidArgument("unexpected CSV header in " + path.string());
}

Eigen::VectorXd column_values(const CsvTable& t, std::size_t col)
{
    Eigen::VectorXd v(static_cast<Eigen::Index>(t.rows.size()));
    for (std::size_t i = 0; i < t.rows.size(); ++i)
        v(static_cast<Eigen::Index>(i)) = parse_number(t.rows[i].at(col));
    return v;
}

} // namespace

std::size_t CsvTable::column(const std::string& name) const
{
    for (std::size_t i = 0; i < header.size(); ++i)
        if (header[i] == name)
            return i;
    throw InvalidArgument("CSV has no column '" + name + "'");
}

CsvTable read_csv(const std::filesystem::path& path)
{
    std::ifstream in(path);
    if (!in)
        throw InvalidArgument("cannot open " + path.string());
    CsvTable t;
    std::string line;
    if (!std::getline(in, line))
        throw InvalidArgument("empty CSV file " + path.string());
    t.header = split_line(line);
    while (std::getline(in, line)) {
        if (line.empty())
            continue;
        auto row = split_line(line);
        if (row.size() != t.header.size())
            throw InvalidArgument("ragged CSV row in " + path.string());
        t.rows.push_back(std::move(row));
    }
    return t;
}

void write_csv(const std::filesystem::path& path, const CsvTable& table)
{
    std::ofstream out(path, std::ios::trunc);
    if (!out)
        throw InvalidArgument("cannot write " + path.string());
    auto emit = [&out](const std::vector<std::string>& cells) {
        for (std::size_t i = 0; i < cells.size(); ++i)
            out << (i ? "," : "") << cells[i];
        out << '\n';
    };
    emit(table.header);
    for (const auto& r : table.rows)
        emit(r);
}

std::string format_number(double v)
{
    char buf[64];
    const auto res = std::to_chars(buf, buf + sizeof buf, v);
    return std::string(buf, res.ptr);
}

double parse_number(const std::string& s)
{
    double v = 0.0;
    const auto res = std::from_chars(s.data(), s.data() + s.size(), v);
    if (res.ec != std::errc() || res.ptr != s.data() + s.size()) {
        // from_chars rejects "inf"/"nan" spelled differently on some platforms
        if (s == "inf")
            return std::numeric_limits<double>::infinity();
        if (s == "-inf")
            return -std::numeric_limits<double>::infinity();
        throw InvalidArgument("not a number: '" + s + "'");
    }
    return v;
}

void write_signal_csv(const std::filesystem::path& path, const Signal& x)
{
    CsvTable t{{"n", "x"}, {}};
    for (Eigen::Index i = 0; i < x.size(); ++i)
        t.rows.push_back({std::to_string(i), format_number(x(i))});
    write_csv(path, t);
}

Signal read_signal_csv(const std::filesystem::path& path)
{
    const auto t = read_csv(path);
    require_header(t, {"n", "x"}, path);
    return column_values(t, 1);
}

void write_taps_csv(const std::filesystem::path& path, const FilterTaps& h)
{
    CsvTable t{{"k", "h"}, {}};
    for (Eigen::Index i = 0; i < h.size(); ++i)
        t.rows.push_back({std::to_string(i), format_number(h[i])});
    write_csv(path, t);
}

FilterTaps read_taps_csv(const std::filesystem::path& path)
{
    const auto t = read_csv(path);
    require_header(t, {"k", "h"}, path);
    return FilterTaps(column_values(t, 1));
}

void write_curve_csv(const std::filesystem::path& path, const LearningCurve& curve)
{
    CsvTable t{{"iteration", "eps_squared", "mse_db_window"}, {}};
    t.rows.reserve(curve.size());
    for (std::size_t i = 0; i < curve.size(); ++i)
        t.rows.push_back({std::to_string(i), format_number(curve[i].eps_squared), format_number(curve[i].mse_db_window)});
    write_csv(path, t);
}

LearningCurve read_curve_csv(const std::filesystem::path& path)
{
    const auto t = read_csv(path);
    require_header(t, {"iteration", "eps_squared", "mse_db_window"}, path);
    LearningCurve c;
    c.reserve(t.rows.size());
    for (const auto& r : t.rows)
        c.push_back({parse_number(r[1]), parse_number(r[2])});
    return c;
}

void write_trigger_csv(const std::filesystem::path& path, const std::vector<TriggerEvent>& events)
{
    CsvTable t{{"iteration", "delta_e", "triggered", "best_candidate_mse_db"}, {}};
    for (const auto& e : events)
        t.rows.push_back({std::to_string(e.iteration), format_number(e.delta_e), e.triggered ? "1" : "0",
                          e.best_candidate_mse_db ? format_number(*e.best_candidate_mse_db) : ""});
    write_csv(path, t);
}

std::vector<TriggerEvent> read_trigger_csv(const std::filesystem::path& path)
{
    const auto t = read_csv(path);
    require_header(t, {"iteration", "delta_e", "triggered", "best_candidate_mse_db"}, path);
    std::vector<TriggerEvent> out;
    for (const auto& r : t.rows) {
        TriggerEvent e;
        e.iteration = std::stoll(r[0]);
        e.delta_e = parse_number(r[1]);
        e.triggered = r[2] == "1";
        if (!r[3].empty())
            e.best_candidate_mse_db = parse_number(r[3]);
        out.push_back(e);
    }
    return out;
}

void write_coefficients_csv(const std::filesystem::path& path, const Eigen::VectorXd& b, const Eigen::VectorXd& a)
{
    CsvTable t{{"b", "a"}, {}};
    const Eigen::Index rows = std::max(b.size(), a.size());
    for (Eigen::Index i = 0; i < rows; ++i)
        t.rows.push_back({i < b.size() ? format_number(b(i)) : "", i < a.size() ? format_number(a(i)) : ""});
    write_csv(path, t);
}

void write_autocorr_csv(const std::filesystem::path& path, const AutocorrSeq<double>& r)
{
    CsvTable t{{"t", "r"}, {}};
    for (Eigen::Index i = 0; i < r.size(); ++i)
        t.rows.push_back({std::to_string(i), format_number(r.lags(i))});
    write_csv(path, t);
}

void write_psd_csv(const std::filesystem::path& path, const PsdCurve<double>& psd)
{
    CsvTable t{{"omega", "X"}, {}};
    for (Eigen::Index i = 0; i < psd.omega.size(); ++i)
        t.rows.push_back({format_number(psd.omega(i)), format_number(psd.values(i))});
    write_csv(path, t);
}

PsdCurve<double> read_psd_csv(const std::filesystem::path& path)
{
    const auto t = read_csv(path);
    require_header(t, {"omega", "X"}, path);
    return {column_values(t, 0), column_values(t, 1)};
}

void write_eigenvalues_csv(const std::filesystem::path& path, const Eigen::VectorXd& eigs)
{
    CsvTable t{{"i", "lambda"}, {}};
    for (Eigen::Index i = 0; i < eigs.size(); ++i)
        t.rows.push_back({std::to_string(i), format_number(eigs(i))});
    write_csv(path, t);
}

Eigen::VectorXd read_eigenvalues_csv(const std::filesystem::path& path)
{
    const auto t = read_csv(path);
    require_header(t, {"i", "lambda"}, path);
    return column_values(t, 1);
}

} // namespace adaptid
