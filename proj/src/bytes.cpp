#include "ringvote/bytes.hpp"

#include "ringvote/errors.hpp"

namespace ringvote {

uint32_t read_be32(BytesView in, size_t offset) {
    if (offset + 4 > in.size()) throw ValidationError("read_be32: truncated input");
    return (uint32_t(in[offset]) << 24) | (uint32_t(in[offset + 1]) << 16) |
           (uint32_t(in[offset + 2]) << 8) | uint32_t(in[offset + 3]);
}

uint64_t read_be64(BytesView in, size_t offset) {
    return (uint64_t(read_be32(in, offset)) << 32) | read_be32(in, offset + 4);
}

std::string to_hex(BytesView b) {
    static const char* digits = "0123456789abcdef";
    std::string out;
    out.reserve(b.size() * 2);
    for (uint8_t c : b) {
        out.push_back(digits[c >> 4]);
        out.push_back(digits[c & 0xf]);
    }
    return out;
}

static int hex_nibble(char c) {
    if (c >= '0' && c <= '9') return c - '0';
    if (c >= 'a' && c <= 'f') return c - 'a' + 10;
    if (c >= 'A' && c <= 'F') return c - 'A' + 10;
    return -1;
}

Bytes from_hex(std::string_view hex) {
    if (hex.size() >= 2 && hex[0] == '0' && (hex[1] == 'x' || hex[1] == 'X')) hex.remove_prefix(2);
    if (hex.size() % 2 != 0) throw ValidationError("from_hex: odd-length string");
    Bytes out(hex.size() / 2);
    for (size_t i = 0; i < out.size(); i++) {
        int hi = hex_nibble(hex[2 * i]);
        int lo = hex_nibble(hex[2 * i + 1]);
        if (hi < 0 || lo < 0) throw ValidationError("from_hex: non-hex character");
        out[i] = uint8_t((hi << 4) | lo);
    }
    return out;
}

Bytes encode_fields(const std::vector<Bytes>& fields) {
    Bytes out;
    append_be32(out, uint32_t(fields.size()));
    for (const Bytes& f : fields) {
        append_be32(out, uint32_t(f.size()));
        append(out, f);
    }
    return out;
}

std::vector<Bytes> decode_fields(BytesView in) {
    size_t pos = 0;
    uint32_t count = read_be32(in, pos);
    pos += 4;
    std::vector<Bytes> fields;
    fields.reserve(count);
    for (uint32_t i = 0; i < count; i++) {
        uint32_t len = read_be32(in, pos);
        pos += 4;
        if (pos + len > in.size()) throw ValidationError("decode_fields: truncated field");
        fields.emplace_back(in.begin() + pos, in.begin() + pos + len);
        pos += len;
    }
    if (pos != in.size()) throw ValidationError("decode_fields: trailing bytes");
    return fields;
}

} // namespace ringvote
