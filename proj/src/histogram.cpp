#include "mowst/histogram.hpp"

#include <cmath>
#include <numeric>

#include "mowst/csv.hpp"
#include "mowst/error.hpp"

namespace mowst {

Histogram::Histogram(std::vector<std::vector<double>> s, std::vector<double> w)
    : support(std::move(s)), weights(std::move(w)) {
    validate();
}

Histogram Histogram::from_1d(const std::vector<double>& points, const std::vector<double>& w) {
    std::vector<std::vector<double>> s;
    s.reserve(points.size());
    for (double p : points) s.push_back({p});
    return Histogram(std::move(s), w);
}

double Histogram::total_mass() const {
    return std::accumulate(weights.begin(), weights.end(), 0.0);
}

bool Histogram::is_normalized(double tol) const {
    return std::abs(total_mass() - 1.0) <= tol;
}

Histogram Histogram::normalized() const {
    double mass = total_mass();
    if (mass <= 0.0) return *this;
    Histogram out = *this;
    for (double& w : out.weights) w /= mass;
    return out;
}

double Histogram::mean_1d() const {
    if (dimension() != 1)
        throw Error(ErrorKind::DimensionError, "mean_1d requires scalar support");
    double mass = total_mass();
    if (mass <= 0.0) return 0.0;
    double acc = 0.0;
    for (std::size_t i = 0; i < size(); ++i) acc += weights[i] * support[i][0];
    return acc / mass;
}

void Histogram::validate() const {
    if (support.size() != weights.size())
        throw Error(ErrorKind::LengthMismatch, "support and weights differ in length");
    if (!support.empty()) {
        const std::size_t d = support.front().size();
        if (d < 1) throw Error(ErrorKind::DimensionError, "support points must have dimension >= 1");
        for (const auto& p : support)
            if (p.size() != d)
                throw Error(ErrorKind::DimensionError, "support points of mixed dimension");
    }
    for (double w : weights)
        if (!(w >= 0.0) || std::isnan(w))
            throw Error(ErrorKind::ParseError, "negative or NaN weight");
}

bool Histogram::same_support(const Histogram& other, double tol) const {
    if (size() != other.size() || dimension() != other.dimension()) return false;
    for (std::size_t i = 0; i < size(); ++i)
        for (std::size_t k = 0; k < dimension(); ++k)
            if (std::abs(support[i][k] - other.support[i][k]) > tol) return false;
    return true;
}

Histogram read_histogram_csv(const std::string& path) {
    auto rows = csv::read_rows(path);
    if (rows.empty()) throw Error(ErrorKind::ParseError, "empty histogram file: " + path);
    const auto& header = rows.front();
    if (header.size() < 2 || header.back() != "weight")
        throw Error(ErrorKind::ParseError, "expected header coord_1,...,coord_d,weight in " + path);
    const std::size_t d = header.size() - 1;
    Histogram h;
    for (std::size_t r = 1; r < rows.size(); ++r) {
        const auto& row = rows[r];
        if (row.size() != d + 1)
            throw Error(ErrorKind::ParseError,
                        path + " line " + std::to_string(r + 1) + ": expected " +
                            std::to_string(d + 1) + " fields");
        std::vector<double> point(d);
        for (std::size_t k = 0; k < d; ++k)
            point[k] = csv::parse_double(row[k], path + " line " + std::to_string(r + 1));
        h.support.push_back(std::move(point));
        h.weights.push_back(csv::parse_double(row[d], path + " line " + std::to_string(r + 1)));
    }
    h.validate();
    return h;
}

std::string histogram_to_csv(const Histogram& h) {
    std::string out;
    const std::size_t d = h.dimension();
    for (std::size_t k = 0; k < d; ++k) out += "coord_" + std::to_string(k + 1) + ",";
    out += "weight\n";
    for (std::size_t i = 0; i < h.size(); ++i) {
        for (std::size_t k = 0; k < d; ++k) out += csv::cell(h.support[i][k]) + ",";
        out += csv::cell(h.weights[i]) + "\n";
    }
    return out;
}

void write_histogram_csv(const std::string& path, const Histogram& h) {
    csv::write_file(path, histogram_to_csv(h));
}

} // namespace mowst
