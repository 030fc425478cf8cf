#include "cgo/field_io.hpp"

#include <cstdint>
#include <fstream>
#include <iomanip>
#include <sstream>

namespace cgo {

void write_field_binary(std::ostream& os, const Field& f) {
    const Grid& g = f.grid();
    const std::uint64_t n = g.n();
    const double L = g.half_width(), R = g.omega_radius();
    os.write(reinterpret_cast<const char*>(&n), sizeof n);
    os.write(reinterpret_cast<const char*>(&L), sizeof L);
    os.write(reinterpret_cast<const char*>(&R), sizeof R);
    os.write(reinterpret_cast<const char*>(f.data()), static_cast<std::streamsize>(f.size() * sizeof(cplx)));
    if (!os) throw Error(ErrorCode::io_error, "failed writing field");
}

Field read_field_binary(std::istream& is) {
    std::uint64_t n = 0;
    double L = 0.0, R = 0.0;
    is.read(reinterpret_cast<char*>(&n), sizeof n);
    is.read(reinterpret_cast<char*>(&L), sizeof L);
    is.read(reinterpret_cast<char*>(&R), sizeof R);
    if (!is) throw Error(ErrorCode::io_error, "truncated field header");
    if (n == 0 || n > (1u << 16)) throw Error(ErrorCode::io_error, "implausible field size in header");
    Field f(Grid::make(static_cast<std::size_t>(n), L, R));
    is.read(reinterpret_cast<char*>(f.data()), static_cast<std::streamsize>(f.size() * sizeof(cplx)));
    if (!is) throw Error(ErrorCode::io_error, "truncated field data");
    if (!f.all_finite()) throw Error(ErrorCode::io_error, "field file contains non-finite values");
    return f;
}

void write_field_csv(std::ostream& os, const Field& f) {
    os << "x,y,re,im\n" << std::setprecision(17);
    for (std::size_t i = 0; i < f.size(); ++i) {
        const cplx z = f.grid().node(i);
        os << z.real() << ',' << z.imag() << ',' << f[i].real() << ',' << f[i].imag() << '\n';
    }
}

void write_file_atomic(const std::filesystem::path& path, const std::string& contents) {
    if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
    std::filesystem::path tmp = path;
    tmp += ".tmp";
    {
        std::ofstream os(tmp, std::ios::binary | std::ios::trunc);
        if (!os) throw Error(ErrorCode::io_error, "cannot open " + tmp.string());
        os << contents;
        os.flush();
        if (!os) throw Error(ErrorCode::io_error, "failed writing " + tmp.string());
    }
    std::filesystem::rename(tmp, path);
}

void save_field(const std::filesystem::path& path, const Field& f) {
    std::ostringstream os(std::ios::binary);
    write_field_binary(os, f);
    write_file_atomic(path, os.str());
}

Field load_field(const std::filesystem::path& path) {
    std::ifstream is(path, std::ios::binary);
    if (!is) throw Error(ErrorCode::io_error, "cannot open " + path.string());
    return read_field_binary(is);
}

}  // namespace cgo
