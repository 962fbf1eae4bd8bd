#include "wns/snapshot.hpp"

#include <cstdint>
#include <cstring>
#include <fstream>
#include <iomanip>
#include <sstream>

namespace wns {

namespace {

constexpr char kMagic[4] = {'W', 'N', 'S', '1'};

struct Header {
    uint32_t version;
    uint32_t n;
    uint8_t kind;
    uint8_t flags;
    uint16_t reserved;
    uint32_t dealias_num;
    uint32_t dealias_den;
    double time;
};

uint8_t pack_flags(SnapshotFlags f) {
    return uint8_t((f.mean_zero ? 1 : 0) | (f.divergence_free ? 2 : 0) | (f.traceless ? 4 : 0));
}

SnapshotFlags unpack_flags(uint8_t b) {
    return SnapshotFlags{(b & 1) != 0, (b & 2) != 0, (b & 4) != 0};
}

void write_header(std::ofstream& out, const Grid3& g, uint8_t kind, SnapshotFlags flags,
                  double time) {
    out.write(kMagic, 4);
    Header h{1u, uint32_t(g.n), kind, pack_flags(flags), 0, uint32_t(g.dealias_num),
             uint32_t(g.dealias_den), time};
    out.write(reinterpret_cast<const char*>(&h.version), 4);
    out.write(reinterpret_cast<const char*>(&h.n), 4);
    out.write(reinterpret_cast<const char*>(&h.kind), 1);
    out.write(reinterpret_cast<const char*>(&h.flags), 1);
    out.write(reinterpret_cast<const char*>(&h.reserved), 2);
    out.write(reinterpret_cast<const char*>(&h.dealias_num), 4);
    out.write(reinterpret_cast<const char*>(&h.dealias_den), 4);
    out.write(reinterpret_cast<const char*>(&h.time), 8);
}

Header read_header(std::ifstream& in, const std::string& path) {
    char magic[4];
    in.read(magic, 4);
    if (!in || std::memcmp(magic, kMagic, 4) != 0) throw IoError("bad magic in " + path);
    Header h{};
    in.read(reinterpret_cast<char*>(&h.version), 4);
    in.read(reinterpret_cast<char*>(&h.n), 4);
    in.read(reinterpret_cast<char*>(&h.kind), 1);
    in.read(reinterpret_cast<char*>(&h.flags), 1);
    in.read(reinterpret_cast<char*>(&h.reserved), 2);
    in.read(reinterpret_cast<char*>(&h.dealias_num), 4);
    in.read(reinterpret_cast<char*>(&h.dealias_den), 4);
    in.read(reinterpret_cast<char*>(&h.time), 8);
    if (!in) throw IoError("truncated header in " + path);
    return h;
}

template <class FieldT, int NC>
void save_impl(const std::string& path, const FieldT& f, uint8_t kind, SnapshotFlags flags,
               double time) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw IoError("cannot open " + path + " for writing");
    write_header(out, f.grid(), kind, flags, time);
    SpecBuf buf(f.grid());
    const Fft& fft = Fft::get(f.grid());
    for (int c = 0; c < NC; ++c) {
        fft.forward(f.data(c), buf.data());
        out.write(reinterpret_cast<const char*>(buf.data()), sizeof(cplx) * f.grid().nspec());
    }
    if (!out) throw IoError("write failed on " + path);
}

template <class FieldT, int NC>
FieldT load_impl(const std::string& path, uint8_t expect_kind, SnapshotFlags* flags,
                 double* time) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot open " + path);
    Header h = read_header(in, path);
    if (h.kind != expect_kind) throw IoError("unexpected field kind in " + path);
    Grid3 g(int(h.n), int(h.dealias_num), int(h.dealias_den));
    FieldT f(g);
    SpecBuf buf(g);
    const Fft& fft = Fft::get(g);
    for (int c = 0; c < NC; ++c) {
        in.read(reinterpret_cast<char*>(buf.data()), sizeof(cplx) * g.nspec());
        if (!in) throw IoError("truncated payload in " + path);
        fft.backward(buf.data(), f.data(c));
    }
    if (flags) *flags = unpack_flags(h.flags);
    if (time) *time = h.time;
    return f;
}

}  // namespace

void save_field(const std::string& path, const VectorField& v, SnapshotFlags flags, double time) {
    save_impl<VectorField, 3>(path, v, 1, flags, time);
}

void save_field(const std::string& path, const SymTensorField& t, SnapshotFlags flags,
                double time) {
    save_impl<SymTensorField, 6>(path, t, 2, flags, time);
}

VectorField load_vector_field(const std::string& path, SnapshotFlags* flags, double* time) {
    return load_impl<VectorField, 3>(path, 1, flags, time);
}

SymTensorField load_tensor_field(const std::string& path, SnapshotFlags* flags, double* time) {
    return load_impl<SymTensorField, 6>(path, 2, flags, time);
}

struct CsvWriter::Impl {
    std::ofstream out;
    std::size_t ncol;
};

CsvWriter::CsvWriter(const std::string& path, const std::vector<std::string>& columns)
    : impl_(new Impl) {
    impl_->out.open(path);
    if (!impl_->out) { delete impl_; throw IoError("cannot open " + path); }
    impl_->ncol = columns.size();
    for (std::size_t i = 0; i < columns.size(); ++i)
        impl_->out << columns[i] << (i + 1 < columns.size() ? "," : "\n");
}

void CsvWriter::row(const std::vector<double>& values) {
    std::ostringstream line;
    line << std::setprecision(17);
    for (std::size_t i = 0; i < values.size(); ++i)
        line << values[i] << (i + 1 < values.size() ? "," : "");
    impl_->out << line.str() << "\n";
}

void CsvWriter::row_mixed(const std::vector<std::string>& values) {
    for (std::size_t i = 0; i < values.size(); ++i)
        impl_->out << values[i] << (i + 1 < values.size() ? "," : "");
    impl_->out << "\n";
}

CsvWriter::~CsvWriter() { delete impl_; }

}  // namespace wns
