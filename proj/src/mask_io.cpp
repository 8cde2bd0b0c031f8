#include "hermsub/mask_io.hpp"

#include <cmath>
#include <fstream>
#include <ostream>
#include <stdexcept>

namespace hermsub {

nlohmann::json mask_to_json(const MatrixMask& mask) {
    nlohmann::json j;
    j["dim"] = mask.dim();
    j["lo"] = mask.lo();
    nlohmann::json taps = nlohmann::json::array();
    for (const auto& t : mask.taps()) {
        nlohmann::json rows = nlohmann::json::array();
        for (int i = 0; i < mask.dim(); ++i) {
            nlohmann::json row = nlohmann::json::array();
            for (int k = 0; k < mask.dim(); ++k)
                row.push_back({t(i, k).real(), t(i, k).imag()});
            rows.push_back(std::move(row));
        }
        taps.push_back(std::move(rows));
    }
    j["taps"] = std::move(taps);
    return j;
}

MatrixMask mask_from_json(const nlohmann::json& j) {
    const int dim = j.at("dim").get<int>();
    const long lo = j.at("lo").get<long>();
    std::vector<Eigen::MatrixXcd> taps;
    for (const auto& tj : j.at("taps")) {
        Eigen::MatrixXcd t(dim, dim);
        if (static_cast<int>(tj.size()) != dim) throw std::invalid_argument("MaskFile: bad tap shape");
        for (int i = 0; i < dim; ++i) {
            if (static_cast<int>(tj[i].size()) != dim)
                throw std::invalid_argument("MaskFile: bad tap shape");
            for (int k = 0; k < dim; ++k) {
                const auto& c = tj[i][k];
                if (c.size() != 2) throw std::invalid_argument("MaskFile: entries must be [re, im]");
                t(i, k) = cplx(c[0].get<double>(), c[1].get<double>());
            }
        }
        taps.push_back(std::move(t));
    }
    return MatrixMask(dim, lo, std::move(taps));
}

void write_mask_file(const std::string& path, const MatrixMask& mask) {
    std::ofstream f(path);
    if (!f) throw std::runtime_error("cannot open for writing: " + path);
    f << mask_to_json(mask).dump(2) << "\n";
}

MatrixMask read_mask_file(const std::string& path) {
    std::ifstream f(path);
    if (!f) throw std::runtime_error("cannot open mask file: " + path);
    nlohmann::json j;
    f >> j;
    return mask_from_json(j);
}

nlohmann::json report_to_json(const ResidualReport& report) {
    nlohmann::json j;
    j["tol"] = report.tol;
    j["pass"] = report.pass;
    nlohmann::json entries = nlohmann::json::array();
    for (const auto& e : report.entries)
        entries.push_back({{"basis", e.basis},
                           {"residual", e.residual},
                           {"scale", e.scale},
                           {"pass", e.pass}});
    j["entries"] = std::move(entries);
    return j;
}

nlohmann::json factor_to_json(const FactorResult& result) {
    nlohmann::json j;
    j["mask"] = mask_to_json(result.B);
    j["residual"] = result.residual;
    j["support"] = {result.support_used.lo, result.support_used.hi};
    return j;
}

nlohmann::json det_report_to_json(const DetIdentityReport& report) {
    nlohmann::json j;
    j["d"] = report.d;
    j["level"] = report.level;
    j["max_rel_err"] = report.max_rel_err;
    j["pass"] = report.pass;
    nlohmann::json samples = nlohmann::json::array();
    for (const auto& [z, rel] : report.samples)
        samples.push_back({{"z", {z.real(), z.imag()}}, {"rel_err", rel}});
    j["samples"] = std::move(samples);
    return j;
}

void write_csv(std::ostream& os, const IterateStack& stack) {
    os << "level,alpha,x,component,value_re,value_im\n";
    os.precision(17);
    for (const auto& lvl : stack.levels) {
        for (long alpha = lvl.data.lo(); alpha <= lvl.data.hi(); ++alpha) {
            const Eigen::VectorXcd v = lvl.data.value(alpha);
            const double x = std::ldexp(static_cast<double>(alpha), -lvl.n);
            for (int c = 0; c < v.size(); ++c)
                os << lvl.n << ',' << alpha << ',' << x << ',' << c << ',' << v(c).real() << ','
                   << v(c).imag() << '\n';
        }
    }
}

void write_svg(std::ostream& os, const IterateStack& stack, int component) {
    if (stack.levels.empty()) throw std::invalid_argument("write_svg: empty stack");
    const auto& lvl = stack.levels.back();
    if (component < 0 || component >= lvl.data.dim())
        throw std::invalid_argument("write_svg: component out of range");
    const int W = 800, H = 400, pad = 20;
    double xmin = std::ldexp(static_cast<double>(lvl.data.lo()), -lvl.n);
    double xmax = std::ldexp(static_cast<double>(lvl.data.hi()), -lvl.n);
    double ymin = 0.0, ymax = 0.0;
    for (long a = lvl.data.lo(); a <= lvl.data.hi(); ++a) {
        const double y = lvl.data.value(a)(component).real();
        ymin = std::min(ymin, y);
        ymax = std::max(ymax, y);
    }
    if (xmax <= xmin) xmax = xmin + 1.0;
    if (ymax <= ymin) ymax = ymin + 1.0;
    os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << W << "\" height=\"" << H
       << "\" viewBox=\"0 0 " << W << " " << H << "\">\n";
    os << "<rect width=\"" << W << "\" height=\"" << H << "\" fill=\"white\"/>\n";
    os << "<polyline fill=\"none\" stroke=\"black\" stroke-width=\"1\" points=\"";
    os.precision(6);
    for (long a = lvl.data.lo(); a <= lvl.data.hi(); ++a) {
        const double x = std::ldexp(static_cast<double>(a), -lvl.n);
        const double y = lvl.data.value(a)(component).real();
        const double px = pad + (x - xmin) / (xmax - xmin) * (W - 2 * pad);
        const double py = H - pad - (y - ymin) / (ymax - ymin) * (H - 2 * pad);
        os << px << "," << py << " ";
    }
    os << "\"/>\n</svg>\n";
}

}  // namespace hermsub
