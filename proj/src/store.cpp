#include <qp/store.hpp>

#include <qp/primality.hpp>

#include <array>
#include <cstdio>
#include <cstring>

namespace qp {

namespace {

constexpr std::array<unsigned char, 4> kMagic = {0x51, 0x50, 0x31, 0x0A};
constexpr std::uint32_t kVersion = 1;
constexpr std::uint64_t kUnfinalized = ~0ull;
constexpr long kHeaderSize = 24;

void put_u32(unsigned char* b, std::uint32_t v) {
    for (int i = 0; i < 4; ++i) b[i] = static_cast<unsigned char>(v >> (8 * i));
}
void put_u64(unsigned char* b, std::uint64_t v) {
    for (int i = 0; i < 8; ++i) b[i] = static_cast<unsigned char>(v >> (8 * i));
}
std::uint32_t get_u32(const unsigned char* b) {
    std::uint32_t v = 0;
    for (int i = 3; i >= 0; --i) v = (v << 8) | b[i];
    return v;
}
std::uint64_t get_u64(const unsigned char* b) {
    std::uint64_t v = 0;
    for (int i = 7; i >= 0; --i) v = (v << 8) | b[i];
    return v;
}

void write_header(std::FILE* f, std::uint64_t k_scan_limit, std::uint64_t count) {
    unsigned char h[kHeaderSize];
    std::memcpy(h, kMagic.data(), 4);
    put_u32(h + 4, kVersion);
    put_u64(h + 8, k_scan_limit);
    put_u64(h + 16, count);
    if (std::fseek(f, 0, SEEK_SET) != 0 || std::fwrite(h, 1, kHeaderSize, f) != kHeaderSize)
        throw StoreError("store: header write failed");
}

StoreHeader read_header(std::FILE* f, bool allow_unfinalized = false) {
    unsigned char h[kHeaderSize];
    if (std::fseek(f, 0, SEEK_SET) != 0 || std::fread(h, 1, kHeaderSize, f) != kHeaderSize)
        throw StoreError("store: file too short for header");
    if (std::memcmp(h, kMagic.data(), 4) != 0)
        throw StoreError("store: bad magic");
    if (get_u32(h + 4) != kVersion)
        throw StoreError("store: unsupported version");
    StoreHeader hdr;
    hdr.k_scan_limit = get_u64(h + 8);
    hdr.count = get_u64(h + 16);
    if (hdr.count == kUnfinalized && !allow_unfinalized)
        throw StoreError("store: file was never finalized");
    return hdr;
}

std::FILE* as_file(void* p) { return static_cast<std::FILE*>(p); }

} // namespace

StoreWriter::StoreWriter(const std::string& path, bool resume) {
    if (resume) {
        std::FILE* f = std::fopen(path.c_str(), "r+b");
        if (!f) throw StoreError("store: cannot open for resume: " + path);
        file_ = f;
        StoreHeader hdr;
        try {
            hdr = read_header(f);
        } catch (...) {
            std::fclose(f);
            file_ = nullptr;
            throw;
        }
        count_ = hdr.count;
        resume_from_ = hdr.k_scan_limit;
        if (count_ > 0) {
            unsigned char rec[8];
            if (std::fseek(f, kHeaderSize + 8 * static_cast<long>(count_ - 1), SEEK_SET) != 0 ||
                std::fread(rec, 1, 8, f) != 8)
                throw StoreError("store: resume read failed");
            last_k_ = get_u64(rec);
        }
        // Invalidate until finalize, then position after the last record.
        write_header(f, hdr.k_scan_limit, kUnfinalized);
        std::fseek(f, kHeaderSize + 8 * static_cast<long>(count_), SEEK_SET);
        return;
    }
    std::FILE* f = std::fopen(path.c_str(), "wb");
    if (!f) throw StoreError("store: cannot create: " + path);
    file_ = f;
    write_header(f, 0, kUnfinalized);
}

StoreWriter::~StoreWriter() {
    if (file_) std::fclose(as_file(file_));
}

void StoreWriter::append(std::uint64_t k) {
    if (finalized_) throw StoreError("store: append after finalize");
    if (k < 1 || (count_ > 0 && k <= last_k_) || k <= resume_from_)
        throw StoreError("store: out-of-order k record", kHeaderSize + 8 * count_);
    unsigned char rec[8];
    put_u64(rec, k);
    if (std::fwrite(rec, 1, 8, as_file(file_)) != 8)
        throw StoreError("store: record write failed", kHeaderSize + 8 * count_);
    last_k_ = k;
    ++count_;
}

StoreHeader StoreWriter::finalize(std::uint64_t k_scan_limit) {
    if (finalized_) throw StoreError("store: double finalize");
    if (count_ > 0 && k_scan_limit < last_k_)
        throw StoreError("store: k_scan_limit below last record");
    std::FILE* f = as_file(file_);
    if (std::fflush(f) != 0) throw StoreError("store: flush failed");
    write_header(f, k_scan_limit, count_);
    if (std::fflush(f) != 0) throw StoreError("store: flush failed");
    finalized_ = true;
    return StoreHeader{k_scan_limit, count_};
}

StoreReader::StoreReader(const std::string& path) {
    std::FILE* f = std::fopen(path.c_str(), "rb");
    if (!f) throw StoreError("store: cannot open: " + path);
    file_ = f;
    try {
        header_ = read_header(f);
        if (std::fseek(f, 0, SEEK_END) != 0)
            throw StoreError("store: seek failed");
        const long size = std::ftell(f);
        const long expect = kHeaderSize + 8 * static_cast<long>(header_.count);
        if (size != expect)
            throw StoreError("store: size/count mismatch (truncated or padded file)",
                             static_cast<std::uint64_t>(size));
        std::fseek(f, kHeaderSize, SEEK_SET);
    } catch (...) {
        std::fclose(f);
        file_ = nullptr;
        throw;
    }
}

StoreReader::~StoreReader() {
    if (file_) std::fclose(as_file(file_));
}

bool StoreReader::next(std::uint64_t& k) {
    if (index_ >= header_.count) return false;
    unsigned char rec[8];
    if (std::fread(rec, 1, 8, as_file(file_)) != 8)
        throw StoreError("store: short read", kHeaderSize + 8 * index_);
    k = get_u64(rec);
    if (k < 1 || (index_ > 0 && k <= last_k_))
        throw StoreError("store: non-ascending record", kHeaderSize + 8 * index_);
    if (k > header_.k_scan_limit)
        throw StoreError("store: record beyond k_scan_limit", kHeaderSize + 8 * index_);
    last_k_ = k;
    ++index_;
    return true;
}

StoreHeader store_write(const std::vector<std::uint64_t>& ks,
                        std::uint64_t k_scan_limit, const std::string& path) {
    StoreWriter w(path);
    for (std::uint64_t k : ks) w.append(k);
    return w.finalize(k_scan_limit);
}

std::vector<std::uint64_t> store_read(const std::string& path, StoreHeader* header) {
    StoreReader r(path);
    if (header) *header = r.header();
    std::vector<std::uint64_t> ks;
    ks.reserve(r.header().count);
    std::uint64_t k;
    while (r.next(k)) ks.push_back(k);
    return ks;
}

namespace {

// splitmix64; fixed seed makes the verification sample reproducible.
std::uint64_t splitmix64(std::uint64_t& state) {
    std::uint64_t z = (state += 0x9e3779b97f4a7c15ull);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
    return z ^ (z >> 31);
}

} // namespace

VerifyReport verify_store(const std::string& path, double sample_rate,
                          std::uint64_t seed) {
    if (sample_rate < 0.0 || sample_rate > 1.0)
        throw StoreError("verify_store: sample_rate must be in [0,1]");
    VerifyReport rep;
    StoreReader r(path);
    if (sample_rate == 0.0) return rep;  // header-only check

    const std::uint64_t threshold =
        sample_rate >= 1.0 ? ~0ull
                           : static_cast<std::uint64_t>(sample_rate * 18446744073709551615.0);
    std::uint64_t rng = seed;
    std::uint64_t k;
    std::uint64_t index = 0;
    while (r.next(k)) {
        const std::uint64_t draw = splitmix64(rng);
        if (sample_rate >= 1.0 || draw <= threshold) {
            ++rep.sampled;
            if (!is_prime(4 * k * k + 1)) {
                rep.failed_k.push_back(k);
                rep.failed_offset.push_back(24 + 8 * index);
            }
        }
        ++index;
    }
    return rep;
}

} // namespace qp
