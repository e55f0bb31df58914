use vpf_core::counting::count_points;
use vpf_core::root_systems::{Family, RootSystemType};

fn main() {
    let t = RootSystemType::new(Family::A, 7).unwrap();
    let h = [82275, 33212, 91868, -57457, 47254, -64616, 94854, -227390];
    let start = std::time::Instant::now();
    let r = count_points(t, &h).unwrap();
    let s = r.value.to_string();
    println!("{} digits, {} mns, {:?}", s.len(), r.mns_count, start.elapsed());
    println!("{s}");
}
