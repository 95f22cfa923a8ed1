#ifndef ODDWHEEL_CERTSTORE_HH
#define ODDWHEEL_CERTSTORE_HH

#include <oddwheel/bitset.hh>
#include <oddwheel/graph.hh>

#include <filesystem>
#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

namespace oddwheel
{
    /// A stored independent set. Text form:
    ///
    ///     graph=W5^2xK3
    ///     size=29
    ///     meta=free text
    ///     *,*,0
    ///     0,2,1
    ///     ...
    ///
    /// One vertex label per line, hub written `*`; `#` lines and blank
    /// lines are ignored.
    struct Certificate
    {
        std::string graph_expr;
        int claimed_size = 0;
        std::vector<VertexLabel> vertices;
        std::string metadata;
        /// SHA-256 of the file content this was read from; empty otherwise.
        std::string checksum;
    };

    auto make_certificate(const std::string & graph_expr, const Graph & g, const Bitset & s, std::string metadata)
        -> Certificate;

    auto write_certificate(std::ostream & out, const Certificate & c) -> void;
    auto format_certificate(const Certificate & c) -> std::string;

    /// Syntax only; throws CertificateError carrying the line number.
    auto parse_certificate(std::string_view text) -> Certificate;

    struct VerifiedCertificate
    {
        Certificate certificate;
        Graph graph;
        Bitset set;
    };

    /// Rebuilds the graph and checks labels, duplicates, size and
    /// independence; a violating edge is named in the error.
    auto verify_certificate(const Certificate & c) -> VerifiedCertificate;

    /// Verifies, writes with LF endings, and returns the SHA-256 of the file.
    auto save_certificate(const Certificate & c, const std::filesystem::path & path) -> std::string;

    /// Reads, verifies, and checks the checksum when one is expected.
    auto load_certificate(const std::filesystem::path & path, std::string_view expected_checksum = {})
        -> VerifiedCertificate;

    auto sha256_hex(std::string_view data) -> std::string;
    auto read_file(const std::filesystem::path & path) -> std::string;

    /// Manifest lines: `name<TAB>relative path<TAB>sha256`.
    struct ManifestEntry
    {
        std::string name;
        std::string path;
        std::string sha256;
    };

    auto read_manifest(const std::filesystem::path & path) -> std::vector<ManifestEntry>;
    auto write_manifest(const std::filesystem::path & path, const std::vector<ManifestEntry> & entries) -> void;

    /// ODDWHEEL_CERT_DIR if set, otherwise the data directory of the source
    /// tree this was built from.
    auto certificate_dir() -> std::filesystem::path;

    struct BundledCertificate
    {
        ManifestEntry entry;
        VerifiedCertificate verified;
    };

    /// Loads every manifest entry in the certificate directory, checking
    /// checksums and re-verifying each set. Throws on the first failure.
    auto bundled_certificates(const std::filesystem::path & dir = certificate_dir())
        -> std::vector<BundledCertificate>;
}

#endif
