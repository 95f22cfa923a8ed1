#include <oddwheel/certstore.hh>
#include <oddwheel/errors.hh>
#include <oddwheel/expr.hh>
#include <oddwheel/mis.hh>

#include <openssl/evp.h>

#include <cstdlib>
#include <fstream>
#include <memory>
#include <sstream>

namespace oddwheel
{
    auto make_certificate(const std::string & graph_expr, const Graph & g, const Bitset & s, std::string metadata)
        -> Certificate
    {
        Certificate c;
        c.graph_expr = canonical_expr(graph_expr);
        c.claimed_size = s.count();
        c.metadata = std::move(metadata);
        s.for_each([&](int v) { c.vertices.push_back(g.label(v)); });
        return c;
    }

    auto write_certificate(std::ostream & out, const Certificate & c) -> void
    {
        out << "graph=" << c.graph_expr << '\n';
        out << "size=" << c.claimed_size << '\n';
        out << "meta=" << c.metadata << '\n';
        for (auto & v : c.vertices)
            out << v.to_string() << '\n';
    }

    auto format_certificate(const Certificate & c) -> std::string
    {
        std::ostringstream out;
        write_certificate(out, c);
        return out.str();
    }

    auto parse_certificate(std::string_view text) -> Certificate
    {
        Certificate c;
        bool have_graph = false, have_size = false, have_meta = false;
        int line_no = 0;
        while (! text.empty()) {
            ++line_no;
            auto eol = text.find('\n');
            auto line = text.substr(0, eol);
            text.remove_prefix(eol == std::string_view::npos ? text.size() : eol + 1);
            if (! line.empty() && line.back() == '\r')
                throw CertificateError("CR line ending", line_no);
            if (line.empty() || line.front() == '#')
                continue;

            auto header = [&](std::string_view key) { return line.starts_with(key) && line[key.size()] == '='; };
            if (line.size() > 5 && header("graph")) {
                if (have_graph)
                    throw CertificateError("duplicate graph header", line_no);
                try {
                    c.graph_expr = canonical_expr(line.substr(6));
                }
                catch (const ParseError & e) {
                    throw CertificateError(std::string("bad graph expression: ") + e.what(), line_no);
                }
                have_graph = true;
                continue;
            }
            if (line.size() > 4 && header("size")) {
                if (have_size)
                    throw CertificateError("duplicate size header", line_no);
                try {
                    std::size_t used = 0;
                    auto digits = std::string(line.substr(5));
                    c.claimed_size = std::stoi(digits, &used);
                    if (used != digits.size() || c.claimed_size < 0)
                        throw std::invalid_argument("size");
                }
                catch (const std::exception &) {
                    throw CertificateError("bad size '" + std::string(line.substr(5)) + "'", line_no);
                }
                have_size = true;
                continue;
            }
            if (line.size() >= 5 && header("meta")) {
                c.metadata = std::string(line.substr(5));
                have_meta = true;
                continue;
            }
            if (! have_graph || ! have_size)
                throw CertificateError("vertex line before graph= and size= headers", line_no);

            VertexLabel label;
            std::string_view rest = line;
            while (true) {
                auto comma = rest.find(',');
                try {
                    label.coords.push_back(AtomVertex::parse(rest.substr(0, comma)));
                }
                catch (const Error &) {
                    throw CertificateError("bad vertex label '" + std::string(line) + "'", line_no);
                }
                if (comma == std::string_view::npos)
                    break;
                rest.remove_prefix(comma + 1);
            }
            c.vertices.push_back(std::move(label));
        }
        if (! have_graph)
            throw CertificateError("missing graph= header");
        if (! have_size)
            throw CertificateError("missing size= header");
        (void) have_meta;
        return c;
    }

    auto verify_certificate(const Certificate & c) -> VerifiedCertificate
    {
        VerifiedCertificate r;
        r.certificate = c;
        try {
            r.graph = evaluate(c.graph_expr);
        }
        catch (const Error & e) {
            throw CertificateError(std::string("cannot build graph: ") + e.what());
        }
        r.set = Bitset(r.graph.vertex_count());
        for (auto & label : c.vertices) {
            int v;
            try {
                v = r.graph.index_of(label);
            }
            catch (const InvalidArgument & e) {
                throw CertificateError(e.what());
            }
            if (r.set.test(v))
                throw CertificateError("duplicate vertex " + label.to_string());
            r.set.set(v);
        }
        if (static_cast<int>(c.vertices.size()) != c.claimed_size)
            throw CertificateError("claimed size " + std::to_string(c.claimed_size) + " but " +
                std::to_string(c.vertices.size()) + " vertices listed");
        auto check = verify_independent(r.graph, r.set);
        if (! check.independent)
            throw CertificateError("not independent: edge " + r.graph.label_string(check.violation->first) + " ~ " +
                r.graph.label_string(check.violation->second));
        return r;
    }

    auto sha256_hex(std::string_view data) -> std::string
    {
        std::unique_ptr<EVP_MD_CTX, decltype(&EVP_MD_CTX_free)> ctx(EVP_MD_CTX_new(), &EVP_MD_CTX_free);
        unsigned char digest[EVP_MAX_MD_SIZE];
        unsigned int length = 0;
        if (! ctx || EVP_DigestInit_ex(ctx.get(), EVP_sha256(), nullptr) != 1 ||
            EVP_DigestUpdate(ctx.get(), data.data(), data.size()) != 1 ||
            EVP_DigestFinal_ex(ctx.get(), digest, &length) != 1)
            throw Error("SHA-256 computation failed");
        static constexpr char hex[] = "0123456789abcdef";
        std::string r;
        for (unsigned int i = 0; i < length; ++i) {
            r += hex[digest[i] >> 4];
            r += hex[digest[i] & 15];
        }
        return r;
    }

    auto read_file(const std::filesystem::path & path) -> std::string
    {
        std::ifstream in(path, std::ios::binary);
        if (! in)
            throw CertificateError("cannot open " + path.string());
        std::ostringstream buffer;
        buffer << in.rdbuf();
        return buffer.str();
    }

    auto save_certificate(const Certificate & c, const std::filesystem::path & path) -> std::string
    {
        verify_certificate(c);
        auto text = format_certificate(c);
        if (path.has_parent_path())
            std::filesystem::create_directories(path.parent_path());
        std::ofstream out(path, std::ios::binary | std::ios::trunc);
        if (! out)
            throw CertificateError("cannot write " + path.string());
        out << text;
        out.close();
        if (! out)
            throw CertificateError("write failed for " + path.string());
        return sha256_hex(text);
    }

    auto load_certificate(const std::filesystem::path & path, std::string_view expected_checksum)
        -> VerifiedCertificate
    {
        auto text = read_file(path);
        auto sum = sha256_hex(text);
        if (! expected_checksum.empty() && sum != expected_checksum)
            throw CertificateError("checksum mismatch for " + path.string() + ": expected " +
                std::string(expected_checksum) + ", got " + sum);
        auto c = parse_certificate(text);
        c.checksum = sum;
        return verify_certificate(c);
    }

    auto read_manifest(const std::filesystem::path & path) -> std::vector<ManifestEntry>
    {
        auto text = read_file(path);
        std::vector<ManifestEntry> entries;
        std::istringstream in(text);
        std::string line;
        int line_no = 0;
        while (std::getline(in, line)) {
            ++line_no;
            if (line.empty() || line[0] == '#')
                continue;
            auto a = line.find('\t');
            auto b = a == std::string::npos ? a : line.find('\t', a + 1);
            if (b == std::string::npos || line.find('\t', b + 1) != std::string::npos)
                throw CertificateError("manifest line needs three tab-separated fields", line_no);
            entries.push_back({line.substr(0, a), line.substr(a + 1, b - a - 1), line.substr(b + 1)});
            if (entries.back().sha256.size() != 64)
                throw CertificateError("manifest checksum is not a SHA-256 hex digest", line_no);
        }
        return entries;
    }

    auto write_manifest(const std::filesystem::path & path, const std::vector<ManifestEntry> & entries) -> void
    {
        std::ofstream out(path, std::ios::binary | std::ios::trunc);
        if (! out)
            throw CertificateError("cannot write " + path.string());
        out << "# name\tpath\tsha256\n";
        for (auto & e : entries)
            out << e.name << '\t' << e.path << '\t' << e.sha256 << '\n';
    }

    auto certificate_dir() -> std::filesystem::path
    {
        if (const char * dir = std::getenv("ODDWHEEL_CERT_DIR"))
            return dir;
#ifdef ODDWHEEL_DATA_DIR
        return std::filesystem::path(ODDWHEEL_DATA_DIR) / "certs";
#else
        return "data/certs";
#endif
    }

    auto bundled_certificates(const std::filesystem::path & dir) -> std::vector<BundledCertificate>
    {
        std::vector<BundledCertificate> r;
        for (auto & e : read_manifest(dir / "MANIFEST")) {
            try {
                r.push_back({e, load_certificate(dir / e.path, e.sha256)});
            }
            catch (const CertificateError & err) {
                throw CertificateError(e.name + ": " + err.what());
            }
        }
        return r;
    }
}
