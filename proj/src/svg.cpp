#include "remile/report.hpp"

#include "remile/text.hpp"

#include <algorithm>
#include <sstream>

namespace remile {

namespace {

constexpr double kWidth = 640;
constexpr double kHeight = 480;
constexpr double kLeft = 80;
constexpr double kRight = 170;  // legend column
constexpr double kTop = 50;
constexpr double kBottom = 90;

constexpr const char* kPalette[] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e", "#8c564b"};

std::string num(double v)
{
    return text::format_fixed(v, 2);
}

std::string escape(std::string_view s)
{
    std::string out;
    for (char c : s) {
        switch (c) {
        case '&': out += "&amp;"; break;
        case '<': out += "&lt;"; break;
        case '>': out += "&gt;"; break;
        case '"': out += "&quot;"; break;
        default: out.push_back(c);
        }
    }
    return out;
}

struct Axis {
    Year lo;
    Year hi;
    int step;
};

Axis make_axis(std::vector<Year> years, Year reference)
{
    years.push_back(reference);
    const auto [mn, mx] = std::minmax_element(years.begin(), years.end());
    Year lo = *mn - 2;
    Year hi = *mx + 2;
    int step = 1;
    for (int s : {1, 2, 5, 10, 20, 50}) {
        step = s;
        if ((hi - lo) / s <= 10)
            break;
    }
    lo = lo - ((lo % step) + step) % step;
    if (hi % step != 0)
        hi = hi + step - ((hi % step) + step) % step;
    return {lo, hi, step};
}

// Marker shape by group index; `cls` distinguishes data markers from legend swatches.
std::string marker(std::size_t group, double x, double y, bool hollow, const std::string& cls,
                   const std::string& title)
{
    const char* color = kPalette[group % std::size(kPalette)];
    std::ostringstream paint;
    if (hollow)
        paint << "fill=\"none\" stroke=\"" << color << "\" stroke-width=\"2\" stroke-dasharray=\"2,1\"";
    else
        paint << "fill=\"" << color << "\" stroke=\"#000000\" stroke-width=\"0.5\"";

    std::ostringstream out;
    constexpr double r = 5;
    switch (group % 4) {
    case 0:
        out << "<circle class=\"" << cls << "\" cx=\"" << num(x) << "\" cy=\"" << num(y) << "\" r=\""
            << num(r) << "\" " << paint.str();
        break;
    case 1:
        out << "<rect class=\"" << cls << "\" x=\"" << num(x - r) << "\" y=\"" << num(y - r)
            << "\" width=\"" << num(2 * r) << "\" height=\"" << num(2 * r) << "\" " << paint.str();
        break;
    case 2:
        out << "<polygon class=\"" << cls << "\" points=\"" << num(x) << ',' << num(y - r - 1) << ' '
            << num(x + r + 1) << ',' << num(y + r) << ' ' << num(x - r - 1) << ',' << num(y + r)
            << "\" " << paint.str();
        break;
    default:
        out << "<polygon class=\"" << cls << "\" points=\"" << num(x) << ',' << num(y - r - 1) << ' '
            << num(x + r + 1) << ',' << num(y) << ' ' << num(x) << ',' << num(y + r + 1) << ' '
            << num(x - r - 1) << ',' << num(y) << "\" " << paint.str();
        break;
    }
    const char* element = group % 4 == 0 ? "circle" : group % 4 == 1 ? "rect" : "polygon";
    if (title.empty())
        out << "/>";
    else
        out << "><title>" << escape(title) << "</title></" << element << ">";
    return out.str();
}

} // namespace

std::string render_figure_svg(const FigureData& fig)
{
    std::vector<Year> xs, ys;
    for (const auto& p : fig.points) {
        xs.push_back(p.iv_year);
        ys.push_back(p.review_year);
    }
    const Axis ax = make_axis(xs, fig.reference_year);
    const Axis ay = make_axis(ys, fig.reference_year);

    const double plot_w = kWidth - kLeft - kRight;
    const double plot_h = kHeight - kTop - kBottom;
    auto sx = [&](double year) { return kLeft + (year - ax.lo) / (ax.hi - ax.lo) * plot_w; };
    auto sy = [&](double year) { return kTop + plot_h - (year - ay.lo) / (ay.hi - ay.lo) * plot_h; };

    std::ostringstream out;
    out << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
        << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << kWidth << "\" height=\"" << kHeight
        << "\" viewBox=\"0 0 " << kWidth << ' ' << kHeight << "\" font-family=\"sans-serif\">\n"
        << "<rect x=\"0\" y=\"0\" width=\"" << kWidth << "\" height=\"" << kHeight
        << "\" fill=\"#ffffff\"/>\n"
        << "<text x=\"" << num(kLeft + plot_w / 2) << "\" y=\"28\" font-size=\"15\" text-anchor=\"middle\">"
        << "Research excellence milestones</text>\n";

    // Axes and ticks.
    out << "<g class=\"axes\" stroke=\"#000000\" stroke-width=\"1\">\n"
        << "<line x1=\"" << num(kLeft) << "\" y1=\"" << num(kTop + plot_h) << "\" x2=\"" << num(kLeft + plot_w)
        << "\" y2=\"" << num(kTop + plot_h) << "\"/>\n"
        << "<line x1=\"" << num(kLeft) << "\" y1=\"" << num(kTop) << "\" x2=\"" << num(kLeft)
        << "\" y2=\"" << num(kTop + plot_h) << "\"/>\n</g>\n";
    out << "<g class=\"ticks\" font-size=\"10\">\n";
    for (Year y = ax.lo; y <= ax.hi; y += ax.step)
        out << "<line x1=\"" << num(sx(y)) << "\" y1=\"" << num(kTop + plot_h) << "\" x2=\"" << num(sx(y))
            << "\" y2=\"" << num(kTop + plot_h + 5) << "\" stroke=\"#000000\"/><text x=\"" << num(sx(y))
            << "\" y=\"" << num(kTop + plot_h + 18) << "\" text-anchor=\"middle\">" << y << "</text>\n";
    for (Year y = ay.lo; y <= ay.hi; y += ay.step)
        out << "<line x1=\"" << num(kLeft - 5) << "\" y1=\"" << num(sy(y)) << "\" x2=\"" << num(kLeft)
            << "\" y2=\"" << num(sy(y)) << "\" stroke=\"#000000\"/><text x=\"" << num(kLeft - 8)
            << "\" y=\"" << num(sy(y) + 3.5) << "\" text-anchor=\"end\">" << y << "</text>\n";
    out << "</g>\n";
    out << "<text x=\"" << num(kLeft + plot_w / 2) << "\" y=\"" << num(kTop + plot_h + 40)
        << "\" font-size=\"12\" text-anchor=\"middle\">Impact vitality milestone (year)</text>\n"
        << "<text x=\"20\" y=\"" << num(kTop + plot_h / 2) << "\" font-size=\"12\" text-anchor=\"middle\" "
        << "transform=\"rotate(-90 20 " << num(kTop + plot_h / 2) << ")\">Review milestone (year)</text>\n";

    // Reference lines.
    const double rx = sx(fig.reference_year);
    const double ry = sy(fig.reference_year);
    out << "<g class=\"reference\" stroke=\"#555555\" stroke-width=\"1\" stroke-dasharray=\"6,4\">\n"
        << "<line x1=\"" << num(rx) << "\" y1=\"" << num(kTop) << "\" x2=\"" << num(rx) << "\" y2=\""
        << num(kTop + plot_h) << "\"/>\n"
        << "<line x1=\"" << num(kLeft) << "\" y1=\"" << num(ry) << "\" x2=\"" << num(kLeft + plot_w)
        << "\" y2=\"" << num(ry) << "\"/>\n</g>\n";

    auto group_index = [&](const std::string& g) {
        auto it = std::find(fig.groups.begin(), fig.groups.end(), g);
        return static_cast<std::size_t>(it - fig.groups.begin());
    };

    out << "<g class=\"points\">\n";
    for (const auto& p : fig.points) {
        const double x = sx(p.iv_year);
        const double y = sy(p.review_year);
        out << marker(group_index(p.group), x, y, p.preliminary,
                      p.preliminary ? "marker preliminary" : "marker",
                      p.country + " (" + std::to_string(p.iv_year) + ", " + std::to_string(p.review_year) + ")")
            << "<text x=\"" << num(x + 7) << "\" y=\"" << num(y - 6) << "\" font-size=\"9\">"
            << escape(p.country) << "</text>\n";
    }
    out << "</g>\n";

    // Legend.
    const double lx = kLeft + plot_w + 20;
    double ly = kTop + 10;
    out << "<g class=\"legend\" font-size=\"11\">\n";
    for (std::size_t g = 0; g < fig.groups.size(); ++g, ly += 18)
        out << marker(g, lx, ly, false, "legend-marker", {}) << "<text x=\"" << num(lx + 12) << "\" y=\""
            << num(ly + 4) << "\">" << escape(fig.groups[g]) << "</text>\n";
    out << "<circle class=\"legend-marker\" cx=\"" << num(lx) << "\" cy=\"" << num(ly) << "\" r=\"5.00\" "
        << "fill=\"none\" stroke=\"#000000\" stroke-width=\"2\" stroke-dasharray=\"2,1\"/><text x=\""
        << num(lx + 12) << "\" y=\"" << num(ly + 4) << "\">preliminary</text>\n";
    ly += 18;
    out << "<line x1=\"" << num(lx - 6) << "\" y1=\"" << num(ly) << "\" x2=\"" << num(lx + 6) << "\" y2=\""
        << num(ly) << "\" stroke=\"#555555\" stroke-dasharray=\"6,4\"/><text x=\"" << num(lx + 12)
        << "\" y=\"" << num(ly + 4) << "\">" << fig.reference_year << "</text>\n";
    out << "</g>\n";

    if (!fig.unreached.empty()) {
        out << "<g class=\"unreached\" font-size=\"10\">\n<text x=\"" << num(lx - 6) << "\" y=\""
            << num(ly + 30) << "\">Not reached:</text>\n";
        double uy = ly + 44;
        for (const auto& u : fig.unreached) {
            const char* missing = !u.iv_year && !u.review_year ? "both"
                                  : !u.iv_year                 ? "impact vitality"
                                                               : "review";
            out << "<text x=\"" << num(lx - 6) << "\" y=\"" << num(uy) << "\">" << escape(u.country)
                << " (" << missing << ")</text>\n";
            uy += 13;
        }
        out << "</g>\n";
    }
    out << "</svg>\n";
    return out.str();
}

} // namespace remile
