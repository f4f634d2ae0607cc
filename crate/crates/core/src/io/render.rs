use std::fs;
use std::path::{Path, PathBuf};
use std::str::FromStr;

use serde::Serialize;

use super::svg::render_svg;
use super::{fs_err, IoError};
use crate::document::{has_errors, validate_project, Payload, Project};
use crate::geometry::Screen;
use crate::ink::{replay_visible, Reveal};
use crate::par::Execution;
use crate::viewport::{sample_transition, Keyframe, Viewport};

pub const DEBUG_STATES_FILE: &str = "debug_states.json";
pub const REPLAY_MANIFEST_FILE: &str = "replay_manifest.json";

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum OutputFormat {
    /// One SVG file per frame.
    #[default]
    SvgSequence,
    /// A single JSON timeline of per-frame camera and ink state, for a
    /// player that draws the scene itself.
    ReplayManifest,
}

impl FromStr for OutputFormat {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "svg-sequence" => Ok(OutputFormat::SvgSequence),
            "replay-manifest" => Ok(OutputFormat::ReplayManifest),
            other => Err(format!("unknown format `{other}` (expected svg-sequence or replay-manifest)")),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct RenderSpec {
    pub fps: f64,
    pub out_dir: PathBuf,
    pub format: OutputFormat,
    pub screen: Screen,
    /// Also write the per-frame timeline as `debug_states.json`.
    pub emit_debug_states: bool,
}

impl RenderSpec {
    pub fn new(out_dir: impl Into<PathBuf>, fps: f64, screen: Screen) -> Self {
        RenderSpec {
            fps,
            out_dir: out_dir.into(),
            format: OutputFormat::SvgSequence,
            screen,
            emit_debug_states: false,
        }
    }

    pub fn validate(&self) -> Result<(), IoError> {
        if !(self.fps > 0.0 && self.fps.is_finite()) {
            return Err(IoError::BadSpec(format!("fps must be positive, got {}", self.fps)));
        }
        self.screen
            .validate()
            .map_err(|e| IoError::BadSpec(e.to_string()))
    }
}

/// Ink revealed for one ink element at one frame.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct InkState {
    pub element: String,
    pub reveals: Vec<Reveal>,
}

/// Everything that determines one output frame.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct FrameState {
    pub index: usize,
    pub step: usize,
    /// Seconds since entering `step`.
    pub time: f64,
    pub viewport: Viewport,
    pub ink: Vec<InkState>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
struct StepInfo {
    index: usize,
    keyframe: Keyframe,
    first_frame: usize,
    frame_count: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
struct Timeline<'a> {
    fps: f64,
    screen: Screen,
    steps: Vec<StepInfo>,
    frames: &'a [FrameState],
}

#[derive(Debug, Clone, PartialEq)]
pub struct RenderSummary {
    pub frame_count: usize,
    /// Every file written, in write order.
    pub files: Vec<PathBuf>,
}

pub fn frame_file_name(index: usize) -> String {
    format!("frame_{index:06}.svg")
}

fn step_keyframes(project: &Project, screen: Screen) -> Result<Vec<Keyframe>, IoError> {
    (0..project.flow.len())
        .map(|i| project.step_keyframe(i, screen).map_err(IoError::from))
        .collect()
}

/// Expands the flow into frames. Step `i` animates from step `i − 1`'s
/// target (step 0 from its own) and its `j`-th frame sits `(j + 1)/fps`
/// seconds after the step was entered.
pub fn plan_frames(project: &Project, fps: f64, screen: Screen) -> Result<Vec<FrameState>, IoError> {
    let keyframes = step_keyframes(project, screen)?;
    let mut frames = Vec::new();
    let Some(first) = keyframes.first() else {
        return Ok(frames);
    };
    let mut prev = *first;
    for (step, kf) in keyframes.iter().enumerate() {
        for (j, viewport) in sample_transition(&prev, kf, fps)?.into_iter().enumerate() {
            let time = (j + 1) as f64 / fps;
            frames.push(FrameState {
                index: frames.len(),
                step,
                time,
                viewport,
                ink: ink_states(project, step, time)?,
            });
        }
        prev = *kf;
    }
    Ok(frames)
}

fn ink_states(project: &Project, step: usize, time: f64) -> Result<Vec<InkState>, IoError> {
    let mut out = Vec::new();
    for e in &project.elements {
        let Payload::Ink { collection, replay, .. } = &e.payload else {
            continue;
        };
        let Some(c) = project.collection(collection) else {
            continue;
        };
        let complete = || (0..c.len()).map(|stroke| Reveal { stroke, fraction: 1.0 }).collect();
        let reveals = match replay {
            None => complete(),
            Some(r) if step < r.step => Vec::new(),
            Some(r) if step == r.step => replay_visible(c, time, r.speed)?,
            Some(_) => complete(),
        };
        out.push(InkState {
            element: e.id.clone(),
            reveals,
        });
    }
    Ok(out)
}

fn timeline_json(project: &Project, spec: &RenderSpec, frames: &[FrameState]) -> Result<String, IoError> {
    let keyframes = step_keyframes(project, spec.screen)?;
    let mut steps = Vec::with_capacity(keyframes.len());
    let mut first_frame = 0;
    for (index, keyframe) in keyframes.into_iter().enumerate() {
        let frame_count = keyframe.frame_count(spec.fps);
        steps.push(StepInfo {
            index,
            keyframe,
            first_frame,
            frame_count,
        });
        first_frame += frame_count;
    }
    let timeline = Timeline {
        fps: spec.fps,
        screen: spec.screen,
        steps,
        frames,
    };
    let value = serde_json::to_value(&timeline).expect("timeline serializes");
    let mut s = serde_json::to_string_pretty(&value).expect("value serializes");
    s.push('\n');
    Ok(s)
}

fn write(path: PathBuf, contents: &str, files: &mut Vec<PathBuf>) -> Result<(), IoError> {
    fs::write(&path, contents).map_err(fs_err(&path))?;
    files.push(path);
    Ok(())
}

/// Plans and renders every frame to SVG text in memory.
pub fn render_frame_svgs(
    project: &Project,
    fps: f64,
    screen: Screen,
    exec: Execution,
) -> Result<Vec<String>, IoError> {
    let frames = plan_frames(project, fps, screen)?;
    Ok(exec.map(&frames, |f| render_svg(project, f, screen)))
}

/// Renders the whole flow into `spec.out_dir`. Frames are rendered with
/// `exec` and written sequentially; identical inputs give identical bytes.
pub fn render_frames(project: &Project, spec: &RenderSpec, exec: Execution) -> Result<RenderSummary, IoError> {
    spec.validate()?;
    let diagnostics = validate_project(project);
    if has_errors(&diagnostics) {
        return Err(IoError::Invalid(diagnostics));
    }
    let frames = plan_frames(project, spec.fps, spec.screen)?;
    let out: &Path = &spec.out_dir;
    fs::create_dir_all(out).map_err(fs_err(out))?;

    let mut files = Vec::new();
    match spec.format {
        OutputFormat::SvgSequence => {
            let svgs = exec.map(&frames, |f| render_svg(project, f, spec.screen));
            for (f, svg) in frames.iter().zip(&svgs) {
                write(out.join(frame_file_name(f.index)), svg, &mut files)?;
            }
        }
        OutputFormat::ReplayManifest => {
            write(out.join(REPLAY_MANIFEST_FILE), &timeline_json(project, spec, &frames)?, &mut files)?;
        }
    }
    if spec.emit_debug_states {
        write(out.join(DEBUG_STATES_FILE), &timeline_json(project, spec, &frames)?, &mut files)?;
    }
    Ok(RenderSummary {
        frame_count: frames.len(),
        files,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::document::FlowStep;
    use crate::geometry::Point;

    fn one_keyframe(transition: f64, dwell: f64) -> Project {
        let mut p = Project::default();
        p.flow.push(FlowStep::nonlinear(
            Keyframe::new(Viewport::new(Point::ORIGIN, 1.0, 0.0)).with_durations(transition, dwell),
        ));
        p
    }

    #[test]
    fn one_second_each_at_two_fps() {
        let p = one_keyframe(1.0, 1.0);
        let frames = plan_frames(&p, 2.0, Screen::new(64.0, 36.0)).unwrap();
        assert_eq!(frames.len(), 4);
        assert_eq!(frames.iter().map(|f| f.time).collect::<Vec<_>>(), [0.5, 1.0, 1.5, 2.0]);

        let dir = tempfile::tempdir().unwrap();
        let spec = RenderSpec::new(dir.path(), 2.0, Screen::new(64.0, 36.0));
        let s = render_frames(&p, &spec, Execution::Sequential).unwrap();
        assert_eq!(s.frame_count, 4);
        assert!(dir.path().join("frame_000003.svg").is_file());
        assert!(!dir.path().join("frame_000004.svg").exists());
    }

    #[test]
    fn format_names() {
        assert_eq!("svg-sequence".parse(), Ok(OutputFormat::SvgSequence));
        assert_eq!("replay-manifest".parse(), Ok(OutputFormat::ReplayManifest));
        assert!("gif".parse::<OutputFormat>().is_err());
    }

    #[test]
    fn refuses_invalid_project_and_spec() {
        let dir = tempfile::tempdir().unwrap();
        let spec = RenderSpec::new(dir.path(), 2.0, Screen::new(64.0, 36.0));
        assert!(matches!(
            render_frames(&Project::default(), &spec, Execution::Sequential),
            Err(IoError::Invalid(_))
        ));
        let bad = RenderSpec::new(dir.path(), 0.0, Screen::new(64.0, 36.0));
        assert!(matches!(
            render_frames(&one_keyframe(1.0, 0.0), &bad, Execution::Sequential),
            Err(IoError::BadSpec(_))
        ));
    }

    #[test]
    fn manifest_and_debug_states() {
        let dir = tempfile::tempdir().unwrap();
        let mut spec = RenderSpec::new(dir.path(), 4.0, Screen::new(64.0, 36.0));
        spec.format = OutputFormat::ReplayManifest;
        spec.emit_debug_states = true;
        let s = render_frames(&one_keyframe(0.5, 0.25), &spec, Execution::Parallel).unwrap();
        assert_eq!(s.frame_count, 3);
        assert_eq!(s.files.len(), 2);
        let v: serde_json::Value =
            serde_json::from_str(&fs::read_to_string(dir.path().join(REPLAY_MANIFEST_FILE)).unwrap()).unwrap();
        assert_eq!(v["frames"].as_array().unwrap().len(), 3);
        assert_eq!(v["steps"][0]["frame_count"], 3);
        assert_eq!(
            fs::read(dir.path().join(REPLAY_MANIFEST_FILE)).unwrap(),
            fs::read(dir.path().join(DEBUG_STATES_FILE)).unwrap()
        );
    }
}
