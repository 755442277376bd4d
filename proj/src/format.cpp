#include "nxmds/format.hpp"

#include <algorithm>
#include <cstring>
#include <fstream>
#include <iterator>

#include "nxmds/error.hpp"

namespace nxmds::format {

namespace {

unsigned bytes_for(std::uint64_t modulus_or_order) { return (ceil_log2(modulus_or_order) + 7) / 8; }

void put_uint(std::vector<std::uint8_t>& out, std::uint64_t v, unsigned width) {
    for (unsigned i = 0; i < width; ++i) out.push_back(static_cast<std::uint8_t>(v >> (8 * i)));
}

class Reader {
   public:
    explicit Reader(std::span<const std::uint8_t> bytes) : bytes_(bytes) {}

    std::uint64_t uint(unsigned width) {
        need(width);
        std::uint64_t v = 0;
        for (unsigned i = 0; i < width; ++i) v |= std::uint64_t{bytes_[pos_ + i]} << (8 * i);
        pos_ += width;
        return v;
    }

    std::span<const std::uint8_t> take(std::size_t count) {
        need(count);
        auto s = bytes_.subspan(pos_, count);
        pos_ += count;
        return s;
    }

    std::size_t remaining() const noexcept { return bytes_.size() - pos_; }

   private:
    void need(std::size_t count) const {
        if (bytes_.size() - pos_ < count) throw Error(ErrorCode::TruncatedPayload, "container ends early");
    }

    std::span<const std::uint8_t> bytes_;
    std::size_t pos_ = 0;
};

std::vector<std::uint8_t> with_header(const CodeParams& params, std::size_t node, PayloadKind kind) {
    const Field& F = params.field;
    std::vector<std::uint8_t> out(std::begin(kMagic), std::end(kMagic));
    out.push_back(kVersion);
    for (std::uint64_t v : {F.characteristic(), std::uint64_t{F.degree()}, std::uint64_t{params.n},
                            std::uint64_t{params.k}, std::uint64_t{params.N}})
        put_uint(out, v, 8);
    const unsigned w = bytes_for(F.characteristic());
    for (std::uint64_t c : F.modulus()) put_uint(out, c, w);
    put_uint(out, node, 8);
    out.push_back(static_cast<std::uint8_t>(kind));
    return out;
}

void put_symbols(std::vector<std::uint8_t>& out, const Field& F, std::span<const Elem> symbols) {
    const unsigned w = F.symbol_bytes();
    out.reserve(out.size() + symbols.size() * w);
    for (Elem e : symbols) put_uint(out, e.value, w);
}

void read_symbols(Reader& in, const Field& F, std::span<Elem> dst) {
    const unsigned w = F.symbol_bytes();
    const auto raw = in.take(dst.size() * w);
    for (std::size_t i = 0; i < dst.size(); ++i) {
        std::uint64_t v = 0;
        for (unsigned b = 0; b < w; ++b) v |= std::uint64_t{raw[i * w + b]} << (8 * b);
        if (v >= F.order()) throw Error(ErrorCode::InvalidArgument, "symbol outside " + F.describe());
        dst[i] = Elem{v};
    }
}

}  // namespace

std::size_t header_size(std::uint64_t p, std::uint64_t s) {
    return sizeof(kMagic) + 1 + 5 * 8 + (s + 1) * bytes_for(p) + 8 + 1;
}

std::vector<std::uint8_t> serialize_node(const CodeParams& params, std::size_t node, const Matrix& slice) {
    if (slice.rows() != params.alpha() || slice.cols() != params.N)
        throw Error(ErrorCode::ShapeMismatch, "node slice must be alpha x N");
    auto out = with_header(params, node, PayloadKind::NodeSlice);
    put_symbols(out, params.field, slice.data());
    return out;
}

std::vector<std::uint8_t> serialize_data(const CodeParams& params, const Matrix& data) {
    if (data.rows() != params.data_rows() || data.cols() != params.N)
        throw Error(ErrorCode::ShapeMismatch, "data matrix must be k*alpha x N");
    auto out = with_header(params, 0, PayloadKind::DataMatrix);
    put_symbols(out, params.field, data.data());
    return out;
}

std::vector<std::uint8_t> serialize_hash(const CodeParams& params, std::size_t node, std::span<const Elem> block) {
    if (block.size() != params.alpha()) throw Error(ErrorCode::ShapeMismatch, "node hash must have alpha symbols");
    auto out = with_header(params, node, PayloadKind::NodeHash);
    put_symbols(out, params.field, block);
    return out;
}

std::vector<std::uint8_t> serialize_vector(const CodeParams& params, std::span<const Elem> r) {
    if (r.size() != params.N) throw Error(ErrorCode::ShapeMismatch, "vector must have N symbols");
    auto out = with_header(params, 0, PayloadKind::Vector);
    put_symbols(out, params.field, r);
    return out;
}

std::vector<std::uint8_t> serialize_seed(const CodeParams& params, const PrgSeed& seed) {
    if (!(seed.ext.base() == params.field)) throw Error(ErrorCode::FieldMismatch, "seed over a different base field");
    auto out = with_header(params, 0, PayloadKind::Seed);
    put_uint(out, seed.ext.degree(), 8);
    put_symbols(out, params.field, seed.ext.coords(seed.x));
    put_symbols(out, params.field, seed.ext.coords(seed.y));
    return out;
}

Container deserialize(std::span<const std::uint8_t> bytes) {
    Reader in(bytes);
    const auto magic = in.take(sizeof(kMagic));
    if (!std::equal(magic.begin(), magic.end(), std::begin(kMagic)))
        throw Error(ErrorCode::BadMagic, "not an NXMDS1 container");
    const auto version = in.uint(1);
    if (version != kVersion)
        throw Error(ErrorCode::VersionMismatch, "container version " + std::to_string(version));

    ContainerHeader h;
    h.p = in.uint(8);
    h.s = in.uint(8);
    h.n = in.uint(8);
    h.k = in.uint(8);
    h.N = in.uint(8);
    if (h.s < 1 || h.s > 64) throw Error(ErrorCode::InvalidArgument, "bad extension degree in header");
    if (!is_prime(h.p)) throw Error(ErrorCode::NonPrimeCharacteristic, "bad characteristic in header");
    const unsigned w = bytes_for(h.p);
    for (std::uint64_t i = 0; i <= h.s; ++i) h.modulus.push_back(in.uint(w));
    h.node = in.uint(8);
    h.kind = static_cast<PayloadKind>(in.uint(1));

    Field field = Field::make(h.p, static_cast<unsigned>(h.s));
    if (field.modulus() != h.modulus) throw Error(ErrorCode::InvalidArgument, "modulus differs from the canonical one");
    if (h.k < 1 || h.k >= h.n || h.N < 1) throw Error(ErrorCode::InvalidArgument, "bad code parameters in header");
    CodeParams params{h.n, h.k, h.N, field};

    Container c{h, params, Matrix{}, std::nullopt};
    switch (h.kind) {
        case PayloadKind::NodeSlice: c.symbols = Matrix(params.alpha(), params.N); break;
        case PayloadKind::DataMatrix: c.symbols = Matrix(params.data_rows(), params.N); break;
        case PayloadKind::NodeHash: c.symbols = Matrix(params.alpha(), 1); break;
        case PayloadKind::Vector: c.symbols = Matrix(1, params.N); break;
        case PayloadKind::Seed: {
            const auto m = in.uint(8);
            if (m < 1 || m > 64) throw Error(ErrorCode::InvalidArgument, "bad seed degree");
            ExtField ext(field, static_cast<unsigned>(m));
            ExtElem x(m), y(m);
            read_symbols(in, field, x);
            read_symbols(in, field, y);
            c.seed = PrgSeed{std::move(ext), std::move(x), std::move(y)};
            break;
        }
        default: throw Error(ErrorCode::InvalidArgument, "unknown payload kind");
    }
    if (h.kind != PayloadKind::Seed) read_symbols(in, field, c.symbols.data());
    if (in.remaining() != 0) throw Error(ErrorCode::InvalidArgument, "trailing bytes after payload");
    return c;
}

std::vector<std::uint8_t> read_file(const std::string& path) {
    std::ifstream f(path, std::ios::binary);
    if (!f) throw Error(ErrorCode::InvalidArgument, "cannot open " + path);
    return {std::istreambuf_iterator<char>(f), std::istreambuf_iterator<char>()};
}

void write_file(const std::string& path, std::span<const std::uint8_t> bytes) {
    std::ofstream f(path, std::ios::binary | std::ios::trunc);
    if (!f) throw Error(ErrorCode::InvalidArgument, "cannot write " + path);
    f.write(reinterpret_cast<const char*>(bytes.data()), static_cast<std::streamsize>(bytes.size()));
    if (!f) throw Error(ErrorCode::InvalidArgument, "write failed for " + path);
}

}  // namespace nxmds::format
