#pragma once

#include <string>
#include <vector>

#include "wns/field.hpp"

namespace wns {

// Snapshot file layout (little endian):
//   bytes 0..3   magic "WNS1"
//   u32          version (1)
//   u32          grid n
//   u8           kind: 0 scalar, 1 vector, 2 symmetric tensor
//   u8           flags: bit0 mean_zero, bit1 divergence_free, bit2 traceless
//   u16          reserved (0)
//   u32          dealias numerator, u32 dealias denominator
//   f64          time stamp
//   payload      ncomp * n*n*(n/2+1) complex spectral coefficients as
//                float64 (re, im) pairs, x-halved r2c order, x fastest.

struct SnapshotFlags {
    bool mean_zero = false;
    bool divergence_free = false;
    bool traceless = false;
};

void save_field(const std::string& path, const VectorField& v, SnapshotFlags flags = {},
                double time = 0.0);
void save_field(const std::string& path, const SymTensorField& t, SnapshotFlags flags = {},
                double time = 0.0);

VectorField load_vector_field(const std::string& path, SnapshotFlags* flags = nullptr,
                              double* time = nullptr);
SymTensorField load_tensor_field(const std::string& path, SnapshotFlags* flags = nullptr,
                                 double* time = nullptr);

/// Simple deterministic CSV writer for norm/ledger tables.
class CsvWriter {
public:
    CsvWriter(const std::string& path, const std::vector<std::string>& columns);
    void row(const std::vector<double>& values);
    void row_mixed(const std::vector<std::string>& values);
    ~CsvWriter();

private:
    struct Impl;
    Impl* impl_;
};

}  // namespace wns
