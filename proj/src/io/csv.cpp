#include "phasembed/io/csv.hpp"

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <vector>

namespace phasembed::io {

using core::Errc;
using core::Error;
using core::Matrix;

namespace {

std::string format_double(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

std::vector<std::string> split_csv_line(const std::string& line) {
    std::vector<std::string> cells;
    std::string cell;
    std::stringstream ss(line);
    while (std::getline(ss, cell, ',')) cells.push_back(cell);
    if (!line.empty() && line.back() == ',') cells.emplace_back();
    return cells;
}

double parse_cell(const std::string& cell, std::size_t line_no) {
    try {
        std::size_t consumed = 0;
        const double v = std::stod(cell, &consumed);
        while (consumed < cell.size() &&
               (cell[consumed] == ' ' || cell[consumed] == '\r' || cell[consumed] == '\t'))
            ++consumed;
        if (consumed != cell.size())
            throw Error(Errc::ParseFailure,
                        "trailing characters in cell at line " + std::to_string(line_no));
        return v;
    } catch (const Error&) {
        throw;
    } catch (const std::exception&) {
        throw Error(Errc::ParseFailure,
                    "non-numeric cell '" + cell + "' at line " + std::to_string(line_no));
    }
}

std::string trim(const std::string& s) {
    std::size_t b = 0, e = s.size();
    while (b < e && (s[b] == ' ' || s[b] == '\t' || s[b] == '\r')) ++b;
    while (e > b && (s[e - 1] == ' ' || s[e - 1] == '\t' || s[e - 1] == '\r')) --e;
    return s.substr(b, e - b);
}

}  // namespace

void write_file_atomic(const std::string& path, const std::string& content) {
    const std::string tmp = path + ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) throw Error(Errc::ParseFailure, "cannot open " + tmp + " for writing");
        out << content;
        if (!out) throw Error(Errc::ParseFailure, "write failed for " + tmp);
    }
    std::filesystem::rename(tmp, path);
}

void write_series_csv(const TimeSeries& ts, const std::string& path) {
    std::ostringstream out;
    out << "t";
    for (std::size_t c = 0; c < ts.channels(); ++c) out << "," << ts.channel_name(c);
    out << "\n";
    for (std::size_t i = 0; i < ts.length(); ++i) {
        out << format_double(static_cast<double>(i) * ts.dt);
        for (std::size_t c = 0; c < ts.channels(); ++c)
            out << "," << format_double(ts.values(c, i));
        out << "\n";
    }
    write_file_atomic(path, out.str());
}

TimeSeries read_series_csv(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error(Errc::ParseFailure, "cannot open " + path);

    std::string line;
    if (!std::getline(in, line)) throw Error(Errc::ParseFailure, "empty file " + path);
    std::vector<std::string> header = split_csv_line(line);
    for (std::string& h : header) h = trim(h);
    if (header.empty()) throw Error(Errc::ParseFailure, "empty header in " + path);

    const bool has_time = header[0] == "t";
    const std::size_t first_channel = has_time ? 1 : 0;
    if (header.size() <= first_channel)
        throw Error(Errc::ParseFailure, "no channel columns in " + path);
    const std::size_t channels = header.size() - first_channel;

    std::vector<double> times;
    std::vector<std::vector<double>> data(channels);
    std::size_t line_no = 1;
    while (std::getline(in, line)) {
        ++line_no;
        if (trim(line).empty()) continue;
        const std::vector<std::string> cells = split_csv_line(line);
        if (cells.size() != header.size())
            throw Error(Errc::ParseFailure, "ragged row at line " + std::to_string(line_no));
        if (has_time) times.push_back(parse_cell(cells[0], line_no));
        for (std::size_t c = 0; c < channels; ++c)
            data[c].push_back(parse_cell(cells[first_channel + c], line_no));
    }

    const std::size_t rows = data[0].size();
    if (rows < 2) throw Error(Errc::ParseFailure, "need at least 2 data rows");

    double dt = 1.0;
    if (has_time) {
        dt = (times.back() - times.front()) / static_cast<double>(rows - 1);
        if (!(dt > 0.0)) throw Error(Errc::ParseFailure, "time column not increasing");
        for (std::size_t i = 0; i + 1 < rows; ++i) {
            const double step = times[i + 1] - times[i];
            if (!(step > 0.0))
                throw Error(Errc::ParseFailure,
                            "time column not strictly increasing near row " + std::to_string(i));
            if (std::fabs(step - dt) > 1e-9 * std::max(std::fabs(dt), 1.0))
                throw Error(Errc::ParseFailure,
                            "time column not uniform near row " + std::to_string(i));
        }
    }

    TimeSeries ts;
    ts.dt = dt;
    ts.channel_names.assign(header.begin() + static_cast<long>(first_channel), header.end());
    ts.values = Matrix(channels, rows);
    for (std::size_t c = 0; c < channels; ++c)
        for (std::size_t i = 0; i < rows; ++i) ts.values(c, i) = data[c][i];
    try {
        core::validate_series(ts);
    } catch (const Error& e) {
        throw Error(Errc::ParseFailure, std::string("invalid series: ") + e.what());
    }
    return ts;
}

void write_tokens_csv(const TokenMatrix& tokens, const std::string& path) {
    std::ostringstream out;
    out << "token_index";
    for (std::size_t c = 0; c < tokens.width(); ++c) out << ",f" << c;
    out << "\n";
    for (std::size_t k = 0; k < tokens.count(); ++k) {
        out << k;
        for (std::size_t c = 0; c < tokens.width(); ++c)
            out << "," << format_double(tokens.tokens(k, c));
        out << "\n";
    }
    write_file_atomic(path, out.str());
}

}  // namespace phasembed::io
