use geodiscord::states::*; use geodiscord::discord::*;
fn main(){ for (d,n) in [(2,4),(3,9)] { let r=random_state(d,d,n,1).unwrap(); let t=std::time::Instant::now(); let o=oracle_gqd(&r,&OracleConfig::default()).unwrap(); println!("{d} {:?} {} {} {:?}", t.elapsed(), o.result.value, gqd(&r,Variant::ASide).unwrap().value, o.converged_restarts); } }
