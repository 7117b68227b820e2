#include "shellmin/measure.hpp"

#include <fstream>
#include <sstream>

#include <json.hpp>

namespace shellmin {

namespace {

void validate_measure(const Mat& points, Vec& weights) {
    if (points.cols() == 0) throw std::invalid_argument("DiscreteMeasure: empty point list");
    if (points.rows() < 1) throw std::invalid_argument("DiscreteMeasure: dim must be >= 1");
    if (weights.size() != points.cols())
        throw std::invalid_argument("DiscreteMeasure: weight/point count mismatch");
    if (!points.allFinite() || !weights.allFinite())
        throw std::invalid_argument("DiscreteMeasure: non-finite entries");
    if ((weights.array() <= 0.0).any())
        throw std::invalid_argument("DiscreteMeasure: weights must be strictly positive");
    const double total = weights.sum();
    if (std::abs(total - 1.0) > 1e-6)
        throw std::invalid_argument("DiscreteMeasure: weights sum to " + std::to_string(total) +
                                    ", expected 1 (not renormalizing)");
    weights /= total;
}

} // namespace

DiscreteMeasure::DiscreteMeasure(Mat points, Vec weights)
    : points_(std::move(points)), weights_(std::move(weights)) {
    validate_measure(points_, weights_);
}

DiscreteMeasure::DiscreteMeasure(Mat points) : points_(std::move(points)) {
    weights_ = Vec::Constant(points_.cols() > 0 ? points_.cols() : 1,
                             1.0 / static_cast<double>(points_.cols() > 0 ? points_.cols() : 1));
    validate_measure(points_, weights_);
}

bool DiscreteMeasure::uniform(double tol) const {
    const double w = 1.0 / static_cast<double>(size());
    return ((weights_.array() - w).abs() < tol).all();
}

SignedMeasure::SignedMeasure(DiscreteMeasure p, DiscreteMeasure m)
    : plus(std::move(p)), minus(std::move(m)) {
    if (plus.dim() != minus.dim())
        throw std::invalid_argument("SignedMeasure: components must share dim");
}

Vec center_of_mass(const DiscreteMeasure& m) { return m.points() * m.weights(); }

DiscreteMeasure centered(const DiscreteMeasure& m) {
    return translated(m, -center_of_mass(m));
}

DiscreteMeasure translated(const DiscreteMeasure& m, const Vec& shift) {
    Mat pts = m.points();
    pts.colwise() += shift;
    return DiscreteMeasure(std::move(pts), m.weights());
}

Mat second_moment_matrix(const DiscreteMeasure& m) {
    return m.points() * m.weights().asDiagonal() * m.points().transpose();
}

double support_diameter(const DiscreteMeasure& m) {
    const Mat& x = m.points();
    double best = 0.0;
    for (Index i = 0; i < x.cols(); ++i)
        for (Index j = i + 1; j < x.cols(); ++j)
            best = std::max(best, (x.col(i) - x.col(j)).norm());
    return best;
}

std::string to_json(const DiscreteMeasure& m) {
    nlohmann::json j;
    j["dim"] = m.dim();
    auto pts = nlohmann::json::array();
    for (Index i = 0; i < m.size(); ++i) {
        auto row = nlohmann::json::array();
        for (int d = 0; d < m.dim(); ++d) row.push_back(m.points()(d, i));
        pts.push_back(std::move(row));
    }
    j["points"] = std::move(pts);
    if (!m.uniform()) {
        auto w = nlohmann::json::array();
        for (Index i = 0; i < m.size(); ++i) w.push_back(m.weights()[i]);
        j["weights"] = std::move(w);
    }
    return j.dump(2);
}

DiscreteMeasure measure_from_json(const std::string& text) {
    const auto j = nlohmann::json::parse(text);
    if (!j.contains("dim") || !j.contains("points"))
        throw std::invalid_argument("measure_from_json: need \"dim\" and \"points\"");
    const int dim = j["dim"].get<int>();
    const auto& pts = j["points"];
    if (!pts.is_array() || pts.empty())
        throw std::invalid_argument("measure_from_json: \"points\" must be a nonempty array");
    Mat points(dim, static_cast<Index>(pts.size()));
    Index col = 0;
    for (const auto& row : pts) {
        if (static_cast<int>(row.size()) != dim)
            throw std::invalid_argument("measure_from_json: point length != dim");
        for (int d = 0; d < dim; ++d) points(d, col) = row[d].get<double>();
        ++col;
    }
    if (j.contains("weights")) {
        const auto& jw = j["weights"];
        Vec weights(static_cast<Index>(jw.size()));
        for (Index i = 0; i < weights.size(); ++i) weights[i] = jw[i].get<double>();
        return DiscreteMeasure(std::move(points), std::move(weights));
    }
    return DiscreteMeasure(std::move(points));
}

DiscreteMeasure load_measure(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::invalid_argument("load_measure: cannot open " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return measure_from_json(buf.str());
}

void save_measure(const DiscreteMeasure& m, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw std::invalid_argument("save_measure: cannot open " + path);
    out << to_json(m) << '\n';
}

} // namespace shellmin
