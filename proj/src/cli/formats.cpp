#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <system_error>
#include <unistd.h>

#include "json.hpp"

#include "hyperseq/cli.hpp"
#include "hyperseq/errors.hpp"

namespace hyperseq::cli {
namespace {

using nlohmann::ordered_json;

ordered_json coefficient_array(const RatPoly& p) {
    ordered_json arr = ordered_json::array();
    for (const auto& c : p.coeffs()) arr.push_back(to_string(c));
    return arr;
}

ordered_json spec_json(const SequenceSpec& spec) {
    ordered_json j;
    j["k"] = spec.k();
    j["A"] = coefficient_array(spec.a());
    j["B"] = coefficient_array(spec.b());
    return j;
}

class SvgMap {
  public:
    SvgMap(const GridSpec& g, int width)
        : g_(g), w_(width), h_(static_cast<int>(std::lround(width * (g.y_max - g.y_min) / (g.x_max - g.x_min)))) {
        if (h_ < 1) h_ = 1;
    }
    [[nodiscard]] int width() const { return w_; }
    [[nodiscard]] int height() const { return h_; }
    [[nodiscard]] double x(double re) const { return (re - g_.x_min) / (g_.x_max - g_.x_min) * w_; }
    [[nodiscard]] double y(double im) const { return (g_.y_max - im) / (g_.y_max - g_.y_min) * h_; }

  private:
    GridSpec g_;
    int w_;
    int h_;
};

std::string px(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.3f", v);
    if (std::string_view(buf) == "-0.000") return "0.000";
    return buf;
}

std::string polyline_path(const SvgMap& map, const std::vector<Complex>& pts) {
    std::string d;
    std::string last;
    for (const auto& z : pts) {
        const std::string xy = px(map.x(z.real())) + ' ' + px(map.y(z.imag()));
        if (xy == last) continue;
        d += d.empty() ? "M" : " L";
        d += xy;
        last = xy;
    }
    return d;
}

}  // namespace

std::string zeros_csv(long n, const std::vector<ZeroRecord>& zeros) {
    std::string out(kZerosCsvHeader);
    out += '\n';
    for (std::size_t i = 0; i < zeros.size(); ++i) {
        const auto& z = zeros[i];
        out += std::to_string(n) + ',' + std::to_string(i) + ',' + format_double(z.location.real()) + ',' +
               format_double(z.location.imag()) + ',' + format_double(z.residual) + ',' +
               std::to_string(z.cluster_size) + ',' + (z.is_real ? "1" : "0") + ',' + format_double(z.im_f) + ',' +
               format_double(z.re_f_signed) + ',' + flags_to_string(z.flags) + '\n';
    }
    return out;
}

std::string curve_csv(const std::vector<CurveSegment>& segments) {
    std::string out = "segment,point,re,im,on_gamma,adjacent_endpoint\n";
    for (std::size_t s = 0; s < segments.size(); ++s) {
        const auto& seg = segments[s];
        const std::string tail = std::string(seg.on_gamma ? "1" : "0") + ',' +
                                 (seg.adjacent_endpoint ? std::to_string(*seg.adjacent_endpoint) : std::string());
        for (std::size_t i = 0; i < seg.points.size(); ++i)
            out += std::to_string(s) + ',' + std::to_string(i) + ',' + format_double(seg.points[i].real()) + ',' +
                   format_double(seg.points[i].imag()) + ',' + tail + '\n';
    }
    return out;
}

std::string endpoints_csv(const EndpointLocus& locus) {
    std::string out = "index,re,im,is_real,f_re,f_im,rho,check_residual\n";
    for (std::size_t i = 0; i < locus.endpoints.size(); ++i) {
        const auto& e = locus.endpoints[i];
        out += std::to_string(i) + ',' + format_double(e.location.real()) + ',' + format_double(e.location.imag()) +
               ',' + (e.is_real ? "1" : "0") + ',' + format_double(e.f_value.real()) + ',' +
               format_double(e.f_value.imag()) + ',' + format_double(e.rho) + ',' + format_double(e.check_residual) +
               '\n';
    }
    return out;
}

std::string gen_csv(const RatPoly& pn) {
    std::string out = "power,coefficient\n";
    const auto c = pn.coeffs();
    for (std::size_t i = 0; i < c.size(); ++i) out += std::to_string(i) + ',' + to_string(c[i]) + '\n';
    return out;
}

std::string gen_json(const SequenceSpec& spec, long n, const RatPoly& pn) {
    ordered_json j = spec_json(spec);
    j["n"] = n;
    j["degree"] = pn.is_zero() ? ordered_json(nullptr) : ordered_json(pn.degree());
    j["coefficients"] = coefficient_array(pn);
    return j.dump(2) + '\n';
}

std::string scan_json(const SequenceSpec& spec, long n_max, const ScanResult& result) {
    ordered_json j = spec_json(spec);
    j["n_max"] = n_max;
    j["found"] = result.n_star.has_value();
    j["n_star"] = result.n_star ? ordered_json(*result.n_star) : ordered_json(nullptr);
    ordered_json reports = ordered_json::array();
    for (const auto& r : result.reports) {
        ordered_json e;
        e["n"] = r.n;
        e["verdict"] = to_string(r.verdict);
        e["certification"] = to_string(r.certification);
        e["degree"] = r.degree;
        e["num_real_distinct"] = r.num_real_distinct;
        e["num_distinct"] = r.num_distinct;
        e["witness"] = r.witness ? ordered_json::array({r.witness->real(), r.witness->imag()}) : ordered_json(nullptr);
        reports.push_back(std::move(e));
    }
    j["reports"] = std::move(reports);
    return j.dump(2) + '\n';
}

std::string figure_svg(const RunConfig& config, const std::vector<CurveSegment>& segments,
                       const std::vector<ZeroRecord>& zeros, const EndpointLocus& locus) {
    const SvgMap map(config.grid, config.style.width);
    const auto& st = config.style;
    std::ostringstream os;
    os << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
       << "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"" << map.width() << "\" height=\""
       << map.height() << "\" viewBox=\"0 0 " << map.width() << ' ' << map.height() << "\">\n"
       << "<!-- config-hash " << fnv1a_hex(config.canonical()) << " -->\n"
       << "<rect x=\"0\" y=\"0\" width=\"" << map.width() << "\" height=\"" << map.height()
       << "\" fill=\"white\"/>\n";

    os << "<g id=\"axes\" stroke=\"#b0b0b0\" stroke-width=\"" << px(0.5 * st.stroke_width) << "\">\n";
    if (config.grid.y_min <= 0.0 && 0.0 <= config.grid.y_max)
        os << "<line x1=\"0\" y1=\"" << px(map.y(0.0)) << "\" x2=\"" << map.width() << "\" y2=\"" << px(map.y(0.0))
           << "\"/>\n";
    if (config.grid.x_min <= 0.0 && 0.0 <= config.grid.x_max)
        os << "<line x1=\"" << px(map.x(0.0)) << "\" y1=\"0\" x2=\"" << px(map.x(0.0)) << "\" y2=\"" << map.height()
           << "\"/>\n";
    os << "</g>\n";

    os << "<g id=\"curve-rest\" fill=\"none\" stroke=\"#c8c8c8\" stroke-width=\"" << px(0.5 * st.stroke_width)
       << "\">\n";
    for (const auto& seg : segments)
        if (!seg.on_gamma && seg.points.size() >= 2)
            os << "<path class=\"curve-rest\" d=\"" << polyline_path(map, seg.points) << "\"/>\n";
    os << "</g>\n";

    os << "<g id=\"curve\" fill=\"none\" stroke=\"black\" stroke-width=\"" << px(st.stroke_width) << "\">\n";
    for (const auto& seg : segments)
        if (seg.on_gamma && seg.points.size() >= 2)
            os << "<path class=\"curve\" d=\"" << polyline_path(map, seg.points) << "\"/>\n";
    os << "</g>\n";

    os << "<g id=\"zeros\" fill=\"none\" stroke=\"black\" stroke-width=\"" << px(0.75 * st.stroke_width) << "\">\n";
    for (const auto& z : zeros)
        os << "<circle class=\"zero\" cx=\"" << px(map.x(z.location.real())) << "\" cy=\""
           << px(map.y(z.location.imag())) << "\" r=\"" << px(st.circle_radius) << "\"/>\n";
    os << "</g>\n";

    os << "<g id=\"endpoints\" fill=\"black\" stroke=\"none\">\n";
    for (const auto& e : locus.endpoints)
        os << "<circle class=\"endpoint\" cx=\"" << px(map.x(e.location.real())) << "\" cy=\""
           << px(map.y(e.location.imag())) << "\" r=\"" << px(st.dot_radius) << "\"/>\n";
    os << "</g>\n</svg>\n";
    return os.str();
}

void write_atomic(const std::filesystem::path& path, std::string_view content) {
    namespace fs = std::filesystem;
    const fs::path tmp = path.string() + ".tmp" + std::to_string(::getpid());
    {
        std::ofstream f(tmp, std::ios::binary | std::ios::trunc);
        if (!f) throw std::runtime_error(path.string() + ": cannot open for writing");
        f.write(content.data(), static_cast<std::streamsize>(content.size()));
        f.flush();
        if (!f) {
            f.close();
            std::error_code ec;
            fs::remove(tmp, ec);
            throw std::runtime_error(path.string() + ": write failed");
        }
    }
    std::error_code ec;
    fs::rename(tmp, path, ec);
    if (ec) {
        fs::remove(tmp, ec);
        throw std::runtime_error(path.string() + ": rename failed");
    }
}

}  // namespace hyperseq::cli
