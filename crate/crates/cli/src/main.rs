use std::fs;
use std::io::{self, BufReader, Write};
use std::net::TcpListener;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::thread;

use clap::error::ErrorKind;
use clap::{Args, CommandFactory, Parser, Subcommand, ValueEnum};
use mirrorlab::geometry::Vec2;
use mirrorlab::imaging::{self, RayMode};
use mirrorlab::mirrors::{Mirror, Orientation, PlaneMirror, SphericalMirror, DEFAULT_APERTURE_DEG};
use mirrorlab::numberline::NumberLineScene;
use mirrorlab::paraxial::{gauss_image, plane_limit_sweep};
use mirrorlab::shell::scene::{parse_scene, SceneDoc, DEFAULT_FAN_FRACTION, DEFAULT_FAN_RAYS};
use mirrorlab::shell::{report, session_loop, svg};
use serde_json::Value;

#[derive(Parser)]
#[command(
    name = "mirrorlab",
    version,
    about = "Plane and spherical mirror imaging, and the mirror number line"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Paraxial image position, magnification and kind.
    Solve(SolveArgs),
    /// Image found by tracing principal rays or a ray fan.
    Trace(TraceArgs),
    /// Images in concave mirrors of growing radius.
    Limit(LimitArgs),
    /// Move a token along the ruler and print both equations of each move.
    Arith(ArithArgs),
    /// Draw a scene as SVG.
    Render(RenderArgs),
    /// Run the session protocol on stdin/stdout or a TCP socket.
    Serve(ServeArgs),
}

#[derive(Args)]
struct MirrorArgs {
    /// Focal length; negative for a convex mirror.
    #[arg(long = "f", allow_hyphen_values = true, conflicts_with_all = ["radius", "plane", "scene"])]
    focal: Option<f64>,
    /// Radius of curvature of a spherical mirror.
    #[arg(long, allow_hyphen_values = true, conflicts_with_all = ["plane", "scene"])]
    radius: Option<f64>,
    /// The spherical mirror is convex.
    #[arg(long, requires = "radius")]
    convex: bool,
    /// Aperture half-angle in degrees.
    #[arg(long, allow_hyphen_values = true, requires = "radius")]
    aperture: Option<f64>,
    /// Use a plane mirror.
    #[arg(long, conflicts_with = "scene")]
    plane: bool,
    /// Scene file to take the mirror and object from.
    #[arg(long)]
    scene: Option<PathBuf>,
    /// Mirror id in the scene.
    #[arg(long = "mirror", requires = "scene")]
    mirror_id: Option<String>,
    /// Object id in the scene.
    #[arg(long = "object", requires = "scene")]
    object_id: Option<String>,
}

#[derive(Args)]
struct SolveArgs {
    #[command(flatten)]
    mirror: MirrorArgs,
    /// Object distance in front of the mirror.
    #[arg(long, allow_hyphen_values = true, required_unless_present = "scene")]
    p_ob: Option<f64>,
}

#[derive(Clone, Copy, ValueEnum)]
enum TraceMethod {
    Ideal,
    Exact,
    Fan,
}

#[derive(Args)]
struct TraceArgs {
    #[command(flatten)]
    mirror: MirrorArgs,
    /// Object distance along the axis.
    #[arg(long, allow_hyphen_values = true, required_unless_present = "scene")]
    axial: Option<f64>,
    /// Object height off the axis.
    #[arg(long, allow_hyphen_values = true, required_unless_present = "scene")]
    height: Option<f64>,
    #[arg(long, value_enum, default_value = "exact")]
    mode: TraceMethod,
    /// Number of fan rays.
    #[arg(long)]
    rays: Option<usize>,
    /// Largest fan height on the mirror.
    #[arg(long, allow_hyphen_values = true)]
    max_height: Option<f64>,
}

#[derive(Args)]
struct LimitArgs {
    #[arg(long, allow_hyphen_values = true)]
    p_ob: f64,
    /// Comma-separated radii; `inf` stands for the plane mirror.
    #[arg(long, value_delimiter = ',', required = true)]
    radii: Vec<f64>,
}

#[derive(Args)]
struct ArithArgs {
    /// Starting position of the token.
    #[arg(long, default_value_t = 0)]
    start: i64,
    /// Displacement of the token; repeat for several moves.
    #[arg(long, allow_hyphen_values = true, required = true)]
    delta: Vec<i64>,
    /// Print one JSON record per move.
    #[arg(long)]
    json: bool,
}

#[derive(Clone, Copy, ValueEnum)]
enum Construction {
    Ideal,
    Exact,
}

#[derive(Args)]
struct RenderArgs {
    #[arg(long)]
    scene: PathBuf,
    #[arg(long = "mirror")]
    mirror_id: Option<String>,
    #[arg(long = "object")]
    object_id: Option<String>,
    #[arg(long, value_enum, default_value = "exact")]
    mode: Construction,
    /// Output file; standard output when omitted.
    #[arg(short, long)]
    output: Option<PathBuf>,
}

#[derive(Args)]
struct ServeArgs {
    /// Listen on a TCP address such as 127.0.0.1:7878.
    #[arg(long)]
    listen: Option<String>,
}

type Fallible<T> = Result<T, String>;

fn load_scene(path: &Path) -> Fallible<SceneDoc> {
    let text = fs::read_to_string(path).map_err(|e| format!("{}: {e}", path.display()))?;
    parse_scene(&text).map_err(|d| format!("{}:{d}", path.display()))
}

/// The mirror and object point named on the command line.
fn resolve(args: &MirrorArgs, axial: Option<f64>, height: Option<f64>) -> Fallible<(Mirror, Vec2, Option<SceneDoc>)> {
    if let Some(path) = &args.scene {
        let doc = load_scene(path)?;
        let q = doc
            .query(args.mirror_id.as_deref(), args.object_id.as_deref())
            .map_err(|e| e.to_string())?;
        return Ok((q.mirror, q.object, Some(doc)));
    }
    let x = Vec2::new(1.0, 0.0);
    let aperture = args.aperture.unwrap_or(DEFAULT_APERTURE_DEG).to_radians();
    let mirror: Mirror = if let Some(r) = args.radius {
        let o = if args.convex {
            Orientation::Convex
        } else {
            Orientation::Concave
        };
        SphericalMirror::new(r, o, aperture, Vec2::ZERO, x)
            .map_err(|e| e.to_string())?
            .into()
    } else if let Some(f) = args.focal {
        if !f.is_finite() || f == 0.0 {
            return Err(format!("focal length must be finite and nonzero, got {f}"));
        }
        let o = if f > 0.0 {
            Orientation::Concave
        } else {
            Orientation::Convex
        };
        SphericalMirror::new(2.0 * f.abs(), o, aperture, Vec2::ZERO, x)
            .map_err(|e| e.to_string())?
            .into()
    } else if args.plane {
        PlaneMirror::new(Vec2::ZERO, x, 10.0).map_err(|e| e.to_string())?.into()
    } else {
        Cli::command()
            .error(
                ErrorKind::MissingRequiredArgument,
                "name a mirror with --f, --radius, --plane or --scene",
            )
            .exit();
    };
    let point = mirror.frame().to_world(axial.unwrap_or(0.0), height.unwrap_or(0.0));
    Ok((mirror, point, None))
}

fn print_record(out: &mut impl Write, record: &Value) -> Fallible<()> {
    writeln!(out, "{record}").map_err(|e| e.to_string())
}

fn solve(args: &SolveArgs) -> Fallible<()> {
    let (mirror, point, _) = resolve(&args.mirror, args.p_ob, None)?;
    let p_ob = args.p_ob.unwrap_or_else(|| mirror.frame().to_local(point).0);
    let f = mirror.focal_length();
    let img = gauss_image(p_ob, f).map_err(|e| e.to_string())?;
    print_record(&mut io::stdout().lock(), &report::gauss_record(p_ob, f, &img))
}

fn trace(args: &TraceArgs) -> Fallible<()> {
    let (mirror, object, doc) = resolve(&args.mirror, args.axial, args.height)?;
    let (method, mode, img) = match args.mode {
        TraceMethod::Fan => {
            let rays = args
                .rays
                .or(doc.as_ref().map(|d| d.options.fan_rays))
                .unwrap_or(DEFAULT_FAN_RAYS);
            let height = args
                .max_height
                .or(doc.as_ref().and_then(|d| d.options.fan_max_height))
                .unwrap_or(DEFAULT_FAN_FRACTION * mirror.max_height());
            ("fan", None, imaging::fan_image(object, &mirror, rays, height))
        }
        TraceMethod::Ideal | TraceMethod::Exact => {
            let mode = if matches!(args.mode, TraceMethod::Ideal) {
                RayMode::Ideal
            } else {
                RayMode::Exact
            };
            let Mirror::Spherical(s) = &mirror else {
                return Err("principal rays need a spherical mirror; use --mode fan".into());
            };
            ("principal", Some(mode), imaging::principal_ray_image(object, s, mode))
        }
    };
    let img = img.map_err(|e| e.to_string())?;
    print_record(&mut io::stdout().lock(), &report::trace_record(method, mode, &img))
}

fn limit(args: &LimitArgs) -> Fallible<()> {
    let rows = plane_limit_sweep(args.p_ob, &args.radii).map_err(|e| e.to_string())?;
    let mut out = io::stdout().lock();
    for row in &rows {
        print_record(&mut out, &report::limit_record(args.p_ob, row))?;
    }
    Ok(())
}

fn arith(args: &ArithArgs) -> Fallible<()> {
    let mut scene = NumberLineScene::new();
    scene.place_token(args.start).map_err(|e| e.to_string())?;
    let mut out = io::stdout().lock();
    for &delta in &args.delta {
        let step = scene.displace(delta).map_err(|e| e.to_string())?;
        let written = if args.json {
            writeln!(out, "{}", report::step_record(&step))
        } else {
            writeln!(
                out,
                "{}\n{}\n{}",
                step.front_equation,
                step.mirrored_equation,
                step.classification.as_str()
            )
        };
        written.map_err(|e| e.to_string())?;
    }
    Ok(())
}

fn render(args: &RenderArgs) -> Fallible<()> {
    let doc = load_scene(&args.scene)?;
    let q = doc
        .query(args.mirror_id.as_deref(), args.object_id.as_deref())
        .map_err(|e| e.to_string())?;
    let mode = match args.mode {
        Construction::Ideal => RayMode::Ideal,
        Construction::Exact => RayMode::Exact,
    };
    let figure = svg::render_svg(&q.mirror, q.object, &svg::RenderOptions { mode });
    match &args.output {
        Some(path) => fs::write(path, figure).map_err(|e| format!("{}: {e}", path.display())),
        None => io::stdout()
            .lock()
            .write_all(figure.as_bytes())
            .map_err(|e| e.to_string()),
    }
}

fn serve(args: &ServeArgs) -> Fallible<()> {
    let Some(addr) = &args.listen else {
        return session_loop(io::stdin().lock(), io::stdout().lock())
            .map(drop)
            .map_err(|e| e.to_string());
    };
    let listener = TcpListener::bind(addr).map_err(|e| format!("{addr}: {e}"))?;
    let local = listener.local_addr().map_err(|e| e.to_string())?;
    eprintln!("listening on {local}");
    for stream in listener.incoming() {
        let stream = match stream {
            Ok(s) => s,
            Err(e) => {
                eprintln!("accept failed: {e}");
                continue;
            }
        };
        thread::spawn(move || {
            let reader = match stream.try_clone() {
                Ok(s) => BufReader::new(s),
                Err(e) => return eprintln!("connection failed: {e}"),
            };
            if let Err(e) = session_loop(reader, stream) {
                eprintln!("session ended: {e}");
            }
        });
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match &cli.command {
        Command::Solve(a) => solve(a),
        Command::Trace(a) => trace(a),
        Command::Limit(a) => limit(a),
        Command::Arith(a) => arith(a),
        Command::Render(a) => render(a),
        Command::Serve(a) => serve(a),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(message) => {
            eprintln!("error: {message}");
            ExitCode::from(1)
        }
    }
}
