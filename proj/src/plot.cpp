#include "srtsel/plot.hpp"

#include <iomanip>
#include <sstream>

namespace srtsel {

namespace {

struct Frame {
    static constexpr double width = 1200.0;
    static constexpr double height = 800.0;
    static constexpr double margin = 60.0;
    double p_top;  // largest beta-r value shown

    double x(double y_div) const {  // divisor in [1/2, 1]
        return margin + (y_div - 0.5) / 0.5 * (width - 2 * margin);
    }
    double y(double p) const {  // shifted remainder in [0, p_top]
        return height - margin - p / p_top * (height - 2 * margin);
    }
};

std::string num(double v) {
    std::ostringstream out;
    out << std::fixed << std::setprecision(2) << v;
    return out.str();
}

}  // namespace

std::string render_pd_svg(const SelectionTable& table, const VerificationReport* report) {
    const RadixConfig& cfg = table.cfg;
    double rho = cfg.rho().to_double();
    Frame frame;
    frame.p_top = (static_cast<double>(cfg.a) + rho) * 1.02;

    std::ostringstream svg;
    svg << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << Frame::width << "\" height=\""
        << Frame::height << "\" viewBox=\"0 0 " << Frame::width << " " << Frame::height << "\">\n";
    svg << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
    svg << "<text x=\"" << Frame::margin << "\" y=\"30\" font-family=\"monospace\" font-size=\"16\">"
        << "P-D diagram: beta=" << cfg.beta << " a=" << cfg.a << " u=" << table.u << " t=" << table.t
        << (report != nullptr && !report->valid() ? "  [invalid]" : "") << "</text>\n";

    // Digit region edges: lower line (d - rho) y for each d >= 1, upper line
    // (d + rho) y for each d < a, and the wedge top (a + rho) y.
    svg << "<g stroke=\"#7799cc\" stroke-width=\"0.6\" fill=\"none\">\n";
    for (std::int64_t d = 1; d <= cfg.a; ++d) {
        double c = static_cast<double>(d) - rho;
        svg << "<line x1=\"" << num(frame.x(0.5)) << "\" y1=\"" << num(frame.y(c * 0.5)) << "\" x2=\""
            << num(frame.x(1.0)) << "\" y2=\"" << num(frame.y(c)) << "\"/>\n";
    }
    for (std::int64_t d = 0; d <= cfg.a; ++d) {
        double c = static_cast<double>(d) + rho;
        svg << "<line x1=\"" << num(frame.x(0.5)) << "\" y1=\"" << num(frame.y(c * 0.5)) << "\" x2=\""
            << num(frame.x(1.0)) << "\" y2=\"" << num(frame.y(c)) << "\"/>\n";
    }
    svg << "</g>\n";

    // Selection staircase: one path per digit, one horizontal step per k.
    double ulp_u = 1.0 / static_cast<double>(std::int64_t{1} << table.u);
    double ulp_t = 1.0 / static_cast<double>(std::int64_t{1} << table.t);
    svg << "<g stroke=\"#222222\" stroke-width=\"1.0\" fill=\"none\">\n";
    for (std::int64_t d = 1; d <= cfg.a; ++d) {
        svg << "<path d=\"";
        for (std::int64_t k = table.k_begin(); k < table.k_end(); ++k) {
            double y0 = static_cast<double>(k) * ulp_u;
            double level = static_cast<double>(table.threshold(k, d)) * ulp_t;
            svg << (k == table.k_begin() ? "M" : "L") << num(frame.x(y0)) << " " << num(frame.y(level))
                << " L" << num(frame.x(y0 + ulp_u)) << " " << num(frame.y(level)) << " ";
        }
        svg << "\"/>\n";
    }
    svg << "</g>\n";

    if (report != nullptr && !report->violations.empty()) {
        svg << "<g class=\"violation\" stroke=\"#cc0000\" stroke-width=\"1.5\" fill=\"#cc0000\" "
               "fill-opacity=\"0.35\">\n";
        for (const auto& v : report->violations) {
            double y0 = static_cast<double>(v.k) * ulp_u;
            double p0 = static_cast<double>(v.s) * ulp_t;
            double px = frame.x(y0);
            double py = frame.y(p0 + ulp_t);
            svg << "<rect class=\"violation\" x=\"" << num(px) << "\" y=\"" << num(py) << "\" width=\""
                << num(frame.x(y0 + ulp_u) - px) << "\" height=\"" << num(frame.y(p0) - py) << "\"/>\n";
        }
        svg << "</g>\n";
    }

    svg << "</svg>\n";
    return svg.str();
}

}  // namespace srtsel
