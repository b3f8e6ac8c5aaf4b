#include "riesz/io.hpp"

#include "riesz/measures.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace riesz {

namespace {

std::runtime_error parse_error(const std::string& what, int line) {
    return std::runtime_error(what + " (line " + std::to_string(line) + ")");
}

bool next_content_line(std::istream& in, std::string& line, int& line_number) {
    while (std::getline(in, line)) {
        ++line_number;
        std::size_t pos = line.find_first_not_of(" \t\r");
        if (pos == std::string::npos) continue;
        if (line[pos] == '#') continue;
        return true;
    }
    return false;
}

std::ifstream open_or_throw(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open file: " + path);
    return in;
}

} // namespace

std::string format_double(double x) {
    char buffer[40];
    std::snprintf(buffer, sizeof(buffer), "%.17g", x);
    return buffer;
}

AnalyticPoly read_coefficients(std::istream& in) {
    std::vector<Complex> coeffs;
    std::string line;
    int line_number = 0;
    while (next_content_line(in, line, line_number)) {
        std::istringstream row(line);
        double re = 0.0, im = 0.0;
        if (!(row >> re >> im)) {
            throw parse_error("coefficient line must be \"re im\"", line_number);
        }
        coeffs.emplace_back(re, im);
    }
    if (coeffs.empty()) throw std::runtime_error("coefficient file is empty");
    return AnalyticPoly(std::move(coeffs));
}

AnalyticPoly read_coefficients_file(const std::string& path) {
    auto in = open_or_throw(path);
    return read_coefficients(in);
}

void write_coefficients(std::ostream& out, const AnalyticPoly& f) {
    for (const auto& a : f.coeffs()) {
        out << format_double(a.real()) << " " << format_double(a.imag()) << "\n";
    }
}

TrigPoly read_trig_poly(std::istream& in) {
    TrigPoly t;
    std::string line;
    int line_number = 0;
    while (next_content_line(in, line, line_number)) {
        const std::size_t colon = line.find(':');
        if (colon == std::string::npos) {
            throw parse_error("trig-poly line must contain ':'", line_number);
        }
        std::istringstream head(line.substr(0, colon));
        std::vector<int> entries;
        int k = 0;
        while (head >> k) entries.push_back(k);
        std::istringstream tail(line.substr(colon + 1));
        double re = 0.0, im = 0.0;
        if (!(tail >> re >> im)) {
            throw parse_error("trig-poly coefficient must be \"re im\"", line_number);
        }
        t.add(MultiIndex(std::move(entries)), Complex(re, im));
    }
    return t;
}

TrigPoly read_trig_poly_file(const std::string& path) {
    auto in = open_or_throw(path);
    return read_trig_poly(in);
}

void write_trig_poly(std::ostream& out, const TrigPoly& t) {
    for (const auto& [kappa, coeff] : t.terms()) {
        for (int e : kappa.entries()) out << e << " ";
        out << ": " << format_double(coeff.real()) << " "
            << format_double(coeff.imag()) << "\n";
    }
}

CircleMeasure read_measure(std::istream& in) {
    std::string line;
    int line_number = 0;
    if (!next_content_line(in, line, line_number)) {
        throw std::runtime_error("measure file is empty");
    }
    std::istringstream header(line);
    std::string tag;
    std::size_t n = 0;
    if (!(header >> tag >> n) || tag != "atoms") {
        throw parse_error("expected header \"atoms n\"", line_number);
    }
    std::vector<Atom> atoms;
    atoms.reserve(n);
    for (std::size_t i = 0; i < n; ++i) {
        if (!next_content_line(in, line, line_number)) {
            throw parse_error("missing atom line", line_number);
        }
        std::istringstream row(line);
        double theta = 0.0, re = 0.0, im = 0.0;
        if (!(row >> theta >> re >> im)) {
            throw parse_error("atom line must be \"theta re im\"", line_number);
        }
        atoms.push_back(Atom{theta, Complex(re, im)});
    }
    if (!next_content_line(in, line, line_number)) {
        throw std::runtime_error("measure file: missing \"density\" section");
    }
    std::istringstream density_tag(line);
    density_tag >> tag;
    if (tag != "density") {
        throw parse_error("expected \"density\"", line_number);
    }
    const TrigPoly density = read_trig_poly(in);
    return CircleMeasure(std::move(atoms), density);
}

CircleMeasure read_measure_file(const std::string& path) {
    auto in = open_or_throw(path);
    return read_measure(in);
}

void write_measure(std::ostream& out, const CircleMeasure& mu) {
    out << "atoms " << mu.atoms().size() << "\n";
    for (const auto& atom : mu.atoms()) {
        out << format_double(atom.angle) << " " << format_double(atom.weight.real())
            << " " << format_double(atom.weight.imag()) << "\n";
    }
    out << "density\n";
    write_trig_poly(out, mu.density());
}

} // namespace riesz
