fn main() {
    println!("reconf");
}
