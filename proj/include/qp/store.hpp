#pragma once

#include <cstdint>
#include <functional>
#include <stdexcept>
#include <string>
#include <vector>

namespace qp {

// Binary store of generator indices k (ascending, k >= 1 only; the prime
// 2 is deliberately not a record).  Layout, all little-endian:
//   bytes 0..3   magic "QP1\n" (0x51 0x50 0x31 0x0A)
//   bytes 4..7   version (u32) = 1
//   bytes 8..15  k_scan_limit (u64): largest k examined, prime or not
//   bytes 16..23 count (u64): number of u64 k records that follow
// While a writer is open, count holds ~0 so readers reject the file.
struct StoreHeader {
    std::uint64_t k_scan_limit = 0;
    std::uint64_t count = 0;
};

class StoreError : public std::runtime_error {
public:
    StoreError(const std::string& what, std::uint64_t offset = 0)
        : std::runtime_error(what), offset_(offset) {}
    std::uint64_t offset() const { return offset_; }

private:
    std::uint64_t offset_;
};

class StoreWriter {
public:
    // Creates or truncates `path`.  With resume=true the file must be a
    // valid finalized store; new records continue after its last one.
    explicit StoreWriter(const std::string& path, bool resume = false);
    ~StoreWriter();
    StoreWriter(const StoreWriter&) = delete;
    StoreWriter& operator=(const StoreWriter&) = delete;

    void append(std::uint64_t k);
    // Marks the file valid.  k_scan_limit records how far the scan went,
    // which is the restart point for a later resume.
    StoreHeader finalize(std::uint64_t k_scan_limit);

    std::uint64_t count() const { return count_; }
    std::uint64_t resume_from() const { return resume_from_; }  // k_scan_limit of resumed file

private:
    void* file_ = nullptr;
    std::uint64_t count_ = 0;
    std::uint64_t last_k_ = 0;
    std::uint64_t resume_from_ = 0;
    bool finalized_ = false;
};

class StoreReader {
public:
    explicit StoreReader(const std::string& path);
    ~StoreReader();
    StoreReader(const StoreReader&) = delete;
    StoreReader& operator=(const StoreReader&) = delete;

    const StoreHeader& header() const { return header_; }
    // Next record, validating ascending order; false at end of stream.
    bool next(std::uint64_t& k);

private:
    void* file_ = nullptr;
    StoreHeader header_;
    std::uint64_t index_ = 0;
    std::uint64_t last_k_ = 0;
};

// Convenience: writes the whole stream and finalizes.
StoreHeader store_write(const std::vector<std::uint64_t>& ks,
                        std::uint64_t k_scan_limit, const std::string& path);

// Convenience: whole-file read.
std::vector<std::uint64_t> store_read(const std::string& path,
                                      StoreHeader* header = nullptr);

struct VerifyReport {
    std::uint64_t sampled = 0;
    std::vector<std::uint64_t> failed_k;     // k with 4k^2+1 composite
    std::vector<std::uint64_t> failed_offset;  // matching byte offsets
    bool ok() const { return failed_k.empty(); }
};

// Re-tests primality of 4k^2+1 on a deterministic pseudo-random sample of
// records.  sample_rate 1.0 checks everything, 0 checks the header only.
VerifyReport verify_store(const std::string& path, double sample_rate,
                          std::uint64_t seed = 0x9e3779b97f4a7c15ull);

} // namespace qp
