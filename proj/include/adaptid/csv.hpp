#pragma once

#include <Eigen/Core>

#include <filesystem>
#include <string>
#include <vector>

#include "adaptid/report.hpp"
#include "adaptid/signals.hpp"
#include "adaptid/spectral.hpp"

namespace adaptid {

/// Plain comma-separated table with a header row. No quoting: every artifact
/// written here is numeric or a bare identifier.
struct CsvTable {
    std::vector<std::string> header;
    std::vector<std::vector<std::string>> rows;

    std::size_t column(const std::string& name) const;
};

CsvTable read_csv(const std::filesystem::path& path);
void write_csv(const std::filesystem::path& path, const CsvTable& table);

/// Shortest decimal text that parses back to the same double.
std::string format_number(double v);
double parse_number(const std::string& s);

void write_signal_csv(const std::filesystem::path& path, const Signal& x);   // n,x
Signal read_signal_csv(const std::filesystem::path& path);
void write_taps_csv(const std::filesystem::path& path, const FilterTaps& h);  // k,h
FilterTaps read_taps_csv(const std::filesystem::path& path);

void write_curve_csv(const std::filesystem::path& path, const LearningCurve& curve); // iteration,eps_squared,mse_db_window
LearningCurve read_curve_csv(const std::filesystem::path& path);

void write_trigger_csv(const std::filesystem::path& path, const std::vector<TriggerEvent>& events);
std::vector<TriggerEvent> read_trigger_csv(const std::filesystem::path& path);

/// Final recursive-filter coefficients, columns b,a; the shorter column is left blank.
void write_coefficients_csv(const std::filesystem::path& path, const Eigen::VectorXd& b, const Eigen::VectorXd& a);

void write_autocorr_csv(const std::filesystem::path& path, const AutocorrSeq<double>& r); // t,r
void write_psd_csv(const std::filesystem::path& path, const PsdCurve<double>& psd);      // omega,X
PsdCurve<double> read_psd_csv(const std::filesystem::path& path);
void write_eigenvalues_csv(const std::filesystem::path& path, const Eigen::VectorXd& eigs); // i,lambda
Eigen::VectorXd read_eigenvalues_csv(const std::filesystem::path& path);

} // namespace adaptid
