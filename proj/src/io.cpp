#include "airybvp/io.hpp"

namespace airy {

CsvWriter::CsvWriter(const std::filesystem::path& path, const std::string& columns) : out_(path) {
  if (!out_) throw InputError("io", "cannot write " + path.string());
  out_ << "# " << columns << '\n';
}

void CsvWriter::separator() {
  if (!fresh_) out_ << ',';
  fresh_ = false;
}

CsvWriter& CsvWriter::operator<<(double v) {
  separator();
  out_ << format_double(v);
  return *this;
}

CsvWriter& CsvWriter::operator<<(long v) {
  separator();
  out_ << v;
  return *this;
}

CsvWriter& CsvWriter::operator<<(const std::string& v) {
  separator();
  out_ << v;
  return *this;
}

void CsvWriter::end_row() {
  out_ << '\n';
  fresh_ = true;
}

void write_field_csv(const std::filesystem::path& path, const SpaceTimeField& field) {
  CsvWriter csv(path, "x,t,re,im");
  for (std::size_t m = 0; m < field.steps(); ++m) {
    for (std::size_t i = 0; i < field.points(); ++i) {
      const Complex v = field(i, m);
      csv << field.grid()[i] << field.times()[m] << v.real() << v.imag();
      csv.end_row();
    }
  }
}

}  // namespace airy
