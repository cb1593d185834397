#include "hobsim/exports.hpp"

#include <cstdint>
#include <cstdio>
#include <cstring>
#include <fstream>
#include <stdexcept>

namespace hobsim {

std::string fnv1a_hex(const std::string& data) {
    std::uint64_t h = 1469598103934665603ull;
    for (unsigned char c : data) {
        h ^= c;
        h *= 1099511628211ull;
    }
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
    return buf;
}

std::string provenance_line(const std::string& config_hash) {
    return "# config-hash=" + (config_hash.empty() ? std::string("none") : config_hash) +
           ", version=" + kArtifactVersion;
}

std::string format_sig12(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.12g", v);
    return buf;
}

void write_deviation_csv(const DeviationField& field, const std::string& path,
                         const std::string& config_hash) {
    std::ofstream os(path);
    if (!os) throw std::runtime_error("write_deviation_csv: cannot write " + path);
    os << provenance_line(config_hash) << "\n";
    os << "row,col,u,z_mm,dev_mm,pose_index\n";
    for (int i = 0; i < field.grid.rows; ++i)
        for (int j = 0; j < field.grid.cols; ++j)
            os << i << "," << j << ","
               << format_sig12(field.grid.profile_params[static_cast<size_t>(j)]) << ","
               << format_sig12(field.grid.axial_params[static_cast<size_t>(i)]) << ","
               << format_sig12(field.deviation(i, j)) << "," << field.pose(i, j) << "\n";
}

namespace {

void put_float(std::ofstream& os, float f) {
    char buf[4];
    std::memcpy(buf, &f, 4);
    os.write(buf, 4);
}

void put_vec(std::ofstream& os, const Vec3& v) {
    put_float(os, static_cast<float>(v.x));
    put_float(os, static_cast<float>(v.y));
    put_float(os, static_cast<float>(v.z));
}

void put_triangle(std::ofstream& os, const Vec3& a, const Vec3& b, const Vec3& c, const Vec3& out_dir) {
    Vec3 n = (b - a).cross(c - a);
    const double len = n.norm();
    if (len > 0.0) n = n / len;
    if (n.dot(out_dir) < 0.0) n = -n;
    put_vec(os, n);
    // Match the facet winding to the (possibly flipped) normal.
    if ((b - a).cross(c - a).dot(n) >= 0.0) {
        put_vec(os, a); put_vec(os, b); put_vec(os, c);
    } else {
        put_vec(os, a); put_vec(os, c); put_vec(os, b);
    }
    const char attr[2] = {0, 0};
    os.write(attr, 2);
}

}  // namespace

void write_stl(const DeviationField& field, const std::string& path) {
    std::ofstream os(path, std::ios::binary);
    if (!os) throw std::runtime_error("write_stl: cannot write " + path);

    const FlankGrid& g = field.grid;
    std::vector<Vec3> verts(g.size());
    for (size_t i = 0; i < g.size(); ++i)
        verts[i] = g.points[i] + g.normals[i] * field.deviations[i];

    char header[80] = {0};
    std::snprintf(header, sizeof header, "%s as-cut flank patch", kArtifactVersion);
    os.write(header, 80);
    const std::uint32_t count = 2u * static_cast<std::uint32_t>(g.rows - 1) * static_cast<std::uint32_t>(g.cols - 1);
    char cbuf[4];
    std::memcpy(cbuf, &count, 4);
    os.write(cbuf, 4);

    for (int i = 0; i + 1 < g.rows; ++i)
        for (int j = 0; j + 1 < g.cols; ++j) {
            const size_t a = static_cast<size_t>(i) * g.cols + j;
            const size_t b = a + 1;
            const size_t c = a + static_cast<size_t>(g.cols);
            const size_t d = c + 1;
            const Vec3 out_dir = g.normals[a];
            put_triangle(os, verts[a], verts[b], verts[d], out_dir);
            put_triangle(os, verts[a], verts[d], verts[c], out_dir);
        }
}

void write_slice_csv(const SliceProfile& slice, const std::string& path,
                     const std::string& config_hash) {
    std::ofstream os(path);
    if (!os) throw std::runtime_error("write_slice_csv: cannot write " + path);
    os << provenance_line(config_hash) << "\n";
    os << "theta_deg,radius_mm,x_mm,y_mm\n";
    for (size_t i = 0; i < slice.size(); ++i) {
        const Vec3 p = slice.point(i);
        os << format_sig12(rad_to_deg(slice.theta[i])) << "," << format_sig12(slice.radius[i]) << ","
           << format_sig12(p.x) << "," << format_sig12(p.y) << "\n";
    }
}

void write_slice_svg(const SliceProfile& slice, const std::string& path) {
    std::ofstream os(path);
    if (!os) throw std::runtime_error("write_slice_svg: cannot write " + path);
    double min_x = 1e30, min_y = 1e30, max_x = -1e30, max_y = -1e30;
    for (size_t i = 0; i < slice.size(); ++i) {
        const Vec3 p = slice.point(i);
        min_x = std::min(min_x, p.x); max_x = std::max(max_x, p.x);
        min_y = std::min(min_y, p.y); max_y = std::max(max_y, p.y);
    }
    const double pad = 1.0;
    os << "<svg xmlns=\"http://www.w3.org/2000/svg\" viewBox=\""
       << (min_x - pad) << " " << (min_y - pad) << " " << (max_x - min_x + 2 * pad) << " "
       << (max_y - min_y + 2 * pad) << "\">\n";
    os << "<path fill=\"none\" stroke=\"black\" stroke-width=\"0.05\" d=\"";
    for (size_t i = 0; i < slice.size(); ++i) {
        const Vec3 p = slice.point(i);
        os << (i == 0 ? "M" : " L") << p.x << " " << p.y;
    }
    os << "\"/>\n</svg>\n";
}

}  // namespace hobsim
