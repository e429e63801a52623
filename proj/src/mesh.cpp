#include "navbench/mesh.hpp"

#include <algorithm>
#include <cstring>
#include <fstream>
#include <sstream>

#include "navbench/errors.hpp"
#include "navbench/rng.hpp"

namespace navbench {

std::string to_string(UpAxis axis) { return axis == UpAxis::YUp ? "y-up" : "z-up"; }

UpAxis up_axis_from_string(const std::string& s) {
    if (s == "y-up" || s == "y_up" || s == "Y" || s == "y") return UpAxis::YUp;
    if (s == "z-up" || s == "z_up" || s == "Z" || s == "z") return UpAxis::ZUp;
    throw DomainError("unknown up-axis '" + s + "' (expected y-up or z-up)");
}

Vec3d Mesh::triangle_normal(size_t t) const {
    const auto& tri = triangles[t];
    const Vec3d a = vertex(tri[0]);
    const Vec3d b = vertex(tri[1]);
    const Vec3d c = vertex(tri[2]);
    return cross(b - a, c - a);
}

double Mesh::triangle_area(size_t t) const { return 0.5 * norm(triangle_normal(t)); }

namespace {

enum class PlyType { Char, UChar, Short, UShort, Int, UInt, Float, Double };

size_t ply_type_size(PlyType t) {
    switch (t) {
        case PlyType::Char:
        case PlyType::UChar:
            return 1;
        case PlyType::Short:
        case PlyType::UShort:
            return 2;
        case PlyType::Int:
        case PlyType::UInt:
        case PlyType::Float:
            return 4;
        case PlyType::Double:
            return 8;
    }
    return 0;
}

PlyType ply_type_from_string(const std::string& s, size_t line) {
    if (s == "char" || s == "int8") return PlyType::Char;
    if (s == "uchar" || s == "uint8") return PlyType::UChar;
    if (s == "short" || s == "int16") return PlyType::Short;
    if (s == "ushort" || s == "uint16") return PlyType::UShort;
    if (s == "int" || s == "int32") return PlyType::Int;
    if (s == "uint" || s == "uint32") return PlyType::UInt;
    if (s == "float" || s == "float32") return PlyType::Float;
    if (s == "double" || s == "float64") return PlyType::Double;
    throw ParseError("PLY: unknown property type '" + s + "' at header line " +
                     std::to_string(line));
}

struct PlyProperty {
    std::string name;
    PlyType type = PlyType::Float;
    bool is_list = false;
    PlyType count_type = PlyType::UChar;
};

struct PlyElement {
    std::string name;
    size_t count = 0;
    std::vector<PlyProperty> properties;

    const PlyProperty* find(const std::string& n) const {
        for (const auto& p : properties)
            if (p.name == n) return &p;
        return nullptr;
    }
};

struct PlyHeader {
    PlyFormat format = PlyFormat::Ascii;
    std::vector<PlyElement> elements;
    size_t data_offset = 0;  // byte offset where element data begins
    size_t header_lines = 0;
};

PlyHeader parse_header(const std::string& data, const std::string& path) {
    PlyHeader header;
    size_t pos = 0;
    size_t line_no = 0;
    bool format_seen = false;
    bool ended = false;

    auto next_line = [&](std::string& out) -> bool {
        if (pos >= data.size()) return false;
        size_t end = data.find('\n', pos);
        if (end == std::string::npos) end = data.size();
        out = data.substr(pos, end - pos);
        if (!out.empty() && out.back() == '\r') out.pop_back();
        pos = end + 1;
        ++line_no;
        return true;
    };

    std::string line;
    if (!next_line(line) || line != "ply")
        throw ParseError("PLY: missing 'ply' magic at line 1 in " + path);

    while (next_line(line)) {
        std::istringstream ss(line);
        std::string keyword;
        ss >> keyword;
        if (keyword == "comment" || keyword == "obj_info" || keyword.empty()) continue;
        if (keyword == "format") {
            std::string fmt, version;
            ss >> fmt >> version;
            if (fmt == "ascii")
                header.format = PlyFormat::Ascii;
            else if (fmt == "binary_little_endian")
                header.format = PlyFormat::BinaryLittleEndian;
            else
                throw ParseError("PLY: unsupported format '" + fmt + "' at header line " +
                                 std::to_string(line_no));
            format_seen = true;
        } else if (keyword == "element") {
            PlyElement elem;
            ss >> elem.name >> elem.count;
            if (ss.fail())
                throw ParseError("PLY: malformed element declaration at header line " +
                                 std::to_string(line_no));
            header.elements.push_back(elem);
        } else if (keyword == "property") {
            if (header.elements.empty())
                throw ParseError("PLY: property before any element at header line " +
                                 std::to_string(line_no));
            PlyProperty prop;
            std::string type_word;
            ss >> type_word;
            if (type_word == "list") {
                std::string count_word, item_word;
                ss >> count_word >> item_word >> prop.name;
                prop.is_list = true;
                prop.count_type = ply_type_from_string(count_word, line_no);
                prop.type = ply_type_from_string(item_word, line_no);
            } else {
                prop.type = ply_type_from_string(type_word, line_no);
                ss >> prop.name;
            }
            if (prop.name.empty())
                throw ParseError("PLY: property without a name at header line " +
                                 std::to_string(line_no));
            header.elements.back().properties.push_back(prop);
        } else if (keyword == "end_header") {
            ended = true;
            break;
        } else {
            throw ParseError("PLY: unknown header keyword '" + keyword + "' at line " +
                             std::to_string(line_no));
        }
    }
    if (!ended) throw ParseError("PLY: missing end_header in " + path);
    if (!format_seen) throw ParseError("PLY: missing format line in " + path);
    header.data_offset = pos;
    header.header_lines = line_no;
    return header;
}

double parse_scalar_ascii(const std::string& token, size_t line) {
    try {
        size_t consumed = 0;
        double v = std::stod(token, &consumed);
        if (consumed != token.size()) throw std::invalid_argument(token);
        return v;
    } catch (const std::exception&) {
        throw ParseError("PLY: bad numeric token '" + token + "' at data line " +
                         std::to_string(line));
    }
}

double read_scalar_binary(const std::string& data, size_t& offset, PlyType type) {
    const size_t size = ply_type_size(type);
    if (offset + size > data.size())
        throw ParseError("PLY: unexpected end of binary data at byte offset " +
                         std::to_string(offset));
    const char* p = data.data() + offset;
    offset += size;
    switch (type) {
        case PlyType::Char: {
            int8_t v;
            std::memcpy(&v, p, 1);
            return v;
        }
        case PlyType::UChar: {
            uint8_t v;
            std::memcpy(&v, p, 1);
            return v;
        }
        case PlyType::Short: {
            int16_t v;
            std::memcpy(&v, p, 2);
            return v;
        }
        case PlyType::UShort: {
            uint16_t v;
            std::memcpy(&v, p, 2);
            return v;
        }
        case PlyType::Int: {
            int32_t v;
            std::memcpy(&v, p, 4);
            return v;
        }
        case PlyType::UInt: {
            uint32_t v;
            std::memcpy(&v, p, 4);
            return v;
        }
        case PlyType::Float: {
            float v;
            std::memcpy(&v, p, 4);
            return v;
        }
        case PlyType::Double: {
            double v;
            std::memcpy(&v, p, 8);
            return v;
        }
    }
    return 0.0;
}

float read_float_binary(const std::string& data, size_t& offset) {
    if (offset + 4 > data.size())
        throw ParseError("PLY: unexpected end of binary data at byte offset " +
                         std::to_string(offset));
    float v;
    std::memcpy(&v, data.data() + offset, 4);
    offset += 4;
    return v;
}

// Tokenized line reader for ascii element data; keeps the line number for
// error messages.
class AsciiCursor {
  public:
    AsciiCursor(const std::string& data, size_t offset, size_t first_line)
        : data_(data), pos_(offset), line_(first_line) {}

    std::vector<std::string> next_row() {
        while (pos_ < data_.size()) {
            size_t end = data_.find('\n', pos_);
            if (end == std::string::npos) end = data_.size();
            std::string line = data_.substr(pos_, end - pos_);
            pos_ = end + 1;
            ++line_;
            std::istringstream ss(line);
            std::vector<std::string> tokens;
            std::string tok;
            while (ss >> tok) tokens.push_back(tok);
            if (!tokens.empty()) return tokens;
        }
        throw ParseError("PLY: unexpected end of ascii data at line " + std::to_string(line_));
    }

    size_t line() const { return line_; }

  private:
    const std::string& data_;
    size_t pos_;
    size_t line_;
};

void validate_and_fix_normals(Mesh& mesh, const std::string& path) {
    for (auto& n : mesh.normals) {
        const double len = norm(Vec3d(n));
        if (std::abs(len - 1.0) > 1e-3)
            throw ParseError("PLY: non-unit vertex normal (length " + std::to_string(len) +
                             ") in " + path);
        n = to_vec3f(Vec3d(n) / len);
    }
}

}  // namespace

Mesh load_ply(const std::string& path, UpAxis up_hint) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ParseError("PLY: cannot open " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    const std::string data = buf.str();

    const PlyHeader header = parse_header(data, path);

    Mesh mesh;
    mesh.up_axis = up_hint;

    const PlyElement* vertex_elem = nullptr;
    const PlyElement* face_elem = nullptr;
    for (const auto& elem : header.elements) {
        if (elem.name == "vertex") {
            vertex_elem = &elem;
        } else if (elem.name == "face") {
            face_elem = &elem;
        } else {
            throw ParseError("PLY: unsupported element type '" + elem.name + "' in " + path);
        }
    }
    if (!vertex_elem) throw ParseError("PLY: no vertex element in " + path);

    for (const char* coord : {"x", "y", "z"}) {
        const PlyProperty* p = vertex_elem->find(coord);
        if (!p || p->is_list || p->type != PlyType::Float)
            throw ParseError(std::string("PLY: vertex property '") + coord +
                             "' missing or not float32 in " + path);
    }
    const bool has_color = vertex_elem->find("red") && vertex_elem->find("green") &&
                           vertex_elem->find("blue");
    if (has_color) {
        for (const char* c : {"red", "green", "blue"}) {
            const PlyProperty* p = vertex_elem->find(c);
            if (p->is_list || p->type != PlyType::UChar)
                throw ParseError(std::string("PLY: color property '") + c +
                                 "' must be uchar in " + path);
        }
    }
    const bool has_normal =
        vertex_elem->find("nx") && vertex_elem->find("ny") && vertex_elem->find("nz");
    if (has_normal) {
        for (const char* c : {"nx", "ny", "nz"}) {
            const PlyProperty* p = vertex_elem->find(c);
            if (p->is_list || p->type != PlyType::Float)
                throw ParseError(std::string("PLY: normal property '") + c +
                                 "' must be float32 in " + path);
        }
    }

    mesh.vertices.reserve(vertex_elem->count);
    if (has_color) mesh.colors.reserve(vertex_elem->count);
    if (has_normal) mesh.normals.reserve(vertex_elem->count);

    auto push_vertex_row = [&](const std::vector<double>& values,
                               const std::vector<const PlyProperty*>& order) {
        Vec3f pos{};
        Rgb8 col{};
        Vec3f nrm{};
        for (size_t i = 0; i < order.size(); ++i) {
            const std::string& n = order[i]->name;
            const double v = values[i];
            if (n == "x")
                pos.x = static_cast<float>(v);
            else if (n == "y")
                pos.y = static_cast<float>(v);
            else if (n == "z")
                pos.z = static_cast<float>(v);
            else if (n == "red")
                col.r = static_cast<uint8_t>(v);
            else if (n == "green")
                col.g = static_cast<uint8_t>(v);
            else if (n == "blue")
                col.b = static_cast<uint8_t>(v);
            else if (n == "nx")
                nrm.x = static_cast<float>(v);
            else if (n == "ny")
                nrm.y = static_cast<float>(v);
            else if (n == "nz")
                nrm.z = static_cast<float>(v);
        }
        mesh.vertices.push_back(pos);
        if (has_color) mesh.colors.push_back(col);
        if (has_normal) mesh.normals.push_back(nrm);
    };

    std::vector<const PlyProperty*> vertex_order;
    for (const auto& p : vertex_elem->properties) vertex_order.push_back(&p);

    auto add_face = [&](const std::vector<int64_t>& idx, size_t where) {
        if (idx.size() < 3)
            throw ParseError("PLY: face with fewer than 3 indices at " + std::to_string(where));
        for (int64_t i : idx) {
            if (i < 0 || static_cast<size_t>(i) >= mesh.vertices.size())
                throw ParseError("PLY: face index out of range (" + std::to_string(i) + " of " +
                                 std::to_string(mesh.vertices.size()) + " vertices) at " +
                                 std::to_string(where));
        }
        for (size_t k = 2; k < idx.size(); ++k)
            mesh.triangles.push_back({static_cast<int32_t>(idx[0]),
                                      static_cast<int32_t>(idx[k - 1]),
                                      static_cast<int32_t>(idx[k])});
    };

    if (header.format == PlyFormat::Ascii) {
        AsciiCursor cursor(data, header.data_offset, header.header_lines);
        std::vector<double> values(vertex_order.size());
        for (size_t v = 0; v < vertex_elem->count; ++v) {
            const auto row = cursor.next_row();
            if (row.size() < vertex_order.size())
                throw ParseError("PLY: vertex row too short at data line " +
                                 std::to_string(cursor.line()));
            for (size_t i = 0; i < vertex_order.size(); ++i)
                values[i] = parse_scalar_ascii(row[i], cursor.line());
            push_vertex_row(values, vertex_order);
        }
        if (face_elem) {
            for (size_t f = 0; f < face_elem->count; ++f) {
                const auto row = cursor.next_row();
                size_t col = 0;
                std::vector<int64_t> idx;
                for (const auto& prop : face_elem->properties) {
                    if (prop.is_list) {
                        if (col >= row.size())
                            throw ParseError("PLY: face row too short at data line " +
                                             std::to_string(cursor.line()));
                        const auto count = static_cast<size_t>(
                            parse_scalar_ascii(row[col++], cursor.line()));
                        for (size_t i = 0; i < count; ++i) {
                            if (col >= row.size())
                                throw ParseError("PLY: face row too short at data line " +
                                                 std::to_string(cursor.line()));
                            const double v = parse_scalar_ascii(row[col++], cursor.line());
                            if (prop.name == "vertex_indices" || prop.name == "vertex_index")
                                idx.push_back(static_cast<int64_t>(v));
                        }
                    } else {
                        ++col;  // scalar face property, skipped
                    }
                }
                add_face(idx, cursor.line());
            }
        }
    } else {
        size_t offset = header.data_offset;
        std::vector<double> values(vertex_order.size());
        for (size_t v = 0; v < vertex_elem->count; ++v) {
            for (size_t i = 0; i < vertex_order.size(); ++i) {
                const PlyProperty& prop = *vertex_order[i];
                if (prop.is_list) {
                    const auto count =
                        static_cast<size_t>(read_scalar_binary(data, offset, prop.count_type));
                    for (size_t k = 0; k < count; ++k) read_scalar_binary(data, offset, prop.type);
                    values[i] = 0.0;
                } else {
                    values[i] = read_scalar_binary(data, offset, prop.type);
                }
            }
            push_vertex_row(values, vertex_order);
        }
        if (face_elem) {
            for (size_t f = 0; f < face_elem->count; ++f) {
                std::vector<int64_t> idx;
                const size_t row_offset = offset;
                for (const auto& prop : face_elem->properties) {
                    if (prop.is_list) {
                        const auto count =
                            static_cast<size_t>(read_scalar_binary(data, offset, prop.count_type));
                        for (size_t i = 0; i < count; ++i) {
                            const double v = read_scalar_binary(data, offset, prop.type);
                            if (prop.name == "vertex_indices" || prop.name == "vertex_index")
                                idx.push_back(static_cast<int64_t>(v));
                        }
                    } else {
                        read_scalar_binary(data, offset, prop.type);
                    }
                }
                add_face(idx, row_offset);
            }
        }
    }

    validate_and_fix_normals(mesh, path);
    return mesh;
}

void save_ply(const Mesh& mesh, const std::string& path, PlyFormat format) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw DomainError("cannot open " + path + " for writing");

    out << "ply\n";
    out << (format == PlyFormat::Ascii ? "format ascii 1.0\n" : "format binary_little_endian 1.0\n");
    out << "element vertex " << mesh.vertices.size() << "\n";
    out << "property float x\nproperty float y\nproperty float z\n";
    if (mesh.has_colors()) out << "property uchar red\nproperty uchar green\nproperty uchar blue\n";
    if (mesh.has_normals()) out << "property float nx\nproperty float ny\nproperty float nz\n";
    out << "element face " << mesh.triangles.size() << "\n";
    out << "property list uchar int vertex_indices\n";
    out << "end_header\n";

    if (format == PlyFormat::Ascii) {
        char buf[256];
        for (size_t i = 0; i < mesh.vertices.size(); ++i) {
            const Vec3f& v = mesh.vertices[i];
            int n = std::snprintf(buf, sizeof(buf), "%.9g %.9g %.9g", v.x, v.y, v.z);
            out.write(buf, n);
            if (mesh.has_colors()) {
                const Rgb8& c = mesh.colors[i];
                n = std::snprintf(buf, sizeof(buf), " %u %u %u", c.r, c.g, c.b);
                out.write(buf, n);
            }
            if (mesh.has_normals()) {
                const Vec3f& m = mesh.normals[i];
                n = std::snprintf(buf, sizeof(buf), " %.9g %.9g %.9g", m.x, m.y, m.z);
                out.write(buf, n);
            }
            out << "\n";
        }
        for (const auto& t : mesh.triangles)
            out << "3 " << t[0] << " " << t[1] << " " << t[2] << "\n";
    } else {
        auto write_f32 = [&](float v) { out.write(reinterpret_cast<const char*>(&v), 4); };
        for (size_t i = 0; i < mesh.vertices.size(); ++i) {
            const Vec3f& v = mesh.vertices[i];
            write_f32(v.x);
            write_f32(v.y);
            write_f32(v.z);
            if (mesh.has_colors()) {
                const Rgb8& c = mesh.colors[i];
                out.put(static_cast<char>(c.r));
                out.put(static_cast<char>(c.g));
                out.put(static_cast<char>(c.b));
            }
            if (mesh.has_normals()) {
                const Vec3f& m = mesh.normals[i];
                write_f32(m.x);
                write_f32(m.y);
                write_f32(m.z);
            }
        }
        for (const auto& t : mesh.triangles) {
            out.put(static_cast<char>(3));
            out.write(reinterpret_cast<const char*>(t.data()), 12);
        }
    }
    if (!out) throw DomainError("failed writing " + path);
}

Mesh convert_axis(const Mesh& mesh, UpAxis target) {
    if (mesh.up_axis == target) return mesh;
    Mesh out = mesh;
    const bool z_to_y = target == UpAxis::YUp;
    auto rotate = [z_to_y](Vec3f v) -> Vec3f {
        // Z-up -> Y-up: (x,y,z) -> (x,z,-y); inverse for the other way.
        return z_to_y ? Vec3f{v.x, v.z, -v.y} : Vec3f{v.x, -v.z, v.y};
    };
    for (auto& v : out.vertices) v = rotate(v);
    for (auto& n : out.normals) n = rotate(n);
    out.up_axis = target;
    return out;
}

AABB compute_bounds(const Mesh& mesh) {
    if (mesh.vertices.empty()) throw DomainError("compute_bounds: empty mesh");
    AABB box{Vec3d(mesh.vertices[0]), Vec3d(mesh.vertices[0])};
    for (const auto& vf : mesh.vertices) {
        const Vec3d v(vf);
        box.min.x = std::min(box.min.x, v.x);
        box.min.y = std::min(box.min.y, v.y);
        box.min.z = std::min(box.min.z, v.z);
        box.max.x = std::max(box.max.x, v.x);
        box.max.y = std::max(box.max.y, v.y);
        box.max.z = std::max(box.max.z, v.z);
    }
    return box;
}

PointCloud sample_surface(const Mesh& mesh, size_t n, uint64_t seed) {
    if (n < 1) throw DomainError("sample_surface: n must be >= 1");

    std::vector<double> cumulative;
    std::vector<size_t> tri_of;
    cumulative.reserve(mesh.triangles.size());
    double total = 0.0;
    for (size_t t = 0; t < mesh.triangles.size(); ++t) {
        const double area = mesh.triangle_area(t);
        if (area <= 0.0) continue;  // degenerate triangles excluded
        total += area;
        cumulative.push_back(total);
        tri_of.push_back(t);
    }
    if (total <= 0.0) throw DomainError("sample_surface: mesh has no positive-area triangle");

    Rng rng(seed);
    PointCloud cloud;
    cloud.points.reserve(n);
    cloud.normals.reserve(n);
    for (size_t i = 0; i < n; ++i) {
        const double pick = rng.uniform() * total;
        const auto it = std::lower_bound(cumulative.begin(), cumulative.end(), pick);
        const size_t t = tri_of[std::min<size_t>(it - cumulative.begin(), tri_of.size() - 1)];

        const auto& tri = mesh.triangles[t];
        const Vec3d a = mesh.vertex(tri[0]);
        const Vec3d b = mesh.vertex(tri[1]);
        const Vec3d c = mesh.vertex(tri[2]);

        // sqrt trick for barycentric-uniform sampling
        const double su = std::sqrt(rng.uniform());
        const double v = rng.uniform();
        const double w0 = 1.0 - su;
        const double w1 = su * (1.0 - v);
        const double w2 = su * v;

        cloud.points.push_back(a * w0 + b * w1 + c * w2);
        cloud.normals.push_back(normalized(cross(b - a, c - a)));
    }
    return cloud;
}

PointCloud to_point_cloud(const Mesh& mesh) {
    PointCloud cloud;
    cloud.points.reserve(mesh.vertices.size());
    for (const auto& v : mesh.vertices) cloud.points.push_back(Vec3d(v));
    if (mesh.has_normals()) {
        cloud.normals.reserve(mesh.normals.size());
        for (const auto& n : mesh.normals) cloud.normals.push_back(Vec3d(n));
    }
    return cloud;
}

}  // namespace navbench
