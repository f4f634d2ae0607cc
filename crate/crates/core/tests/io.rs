use std::fs;
use std::path::Path;

use presenter_core::document::{CanvasElement, ElementKind, InkReplay, Payload, Size};
use presenter_core::ink::{parse_stroke_log, replay_visible, write_stroke_log, InkSample, PenStyle, Stroke, StrokeCollection};
use presenter_core::io::{
    export_bundle, load_project, plan_frames, render_frames, render_svg, save_project, IoError, RenderSpec,
};
use presenter_core::{Color, Execution, FlowStep, Keyframe, Point, Project, Screen, Viewport};

fn image(id: &str, path: &str, x: f64) -> CanvasElement {
    CanvasElement::new(
        id,
        ElementKind::ImageAsset,
        Point::new(x, 0.0),
        Payload::Asset {
            asset: path.into(),
            size: Size {
                width: 50.0,
                height: 50.0,
            },
            page: None,
        },
    )
}

fn one_step(transition: f64, dwell: f64) -> Project {
    let mut p = Project::default();
    p.flow.push(FlowStep::nonlinear(
        Keyframe::new(Viewport::new(Point::ORIGIN, 1.0, 0.0)).with_durations(transition, dwell),
    ));
    p
}

fn write(path: &Path, bytes: &[u8]) {
    fs::create_dir_all(path.parent().unwrap()).unwrap();
    fs::write(path, bytes).unwrap();
}

#[test]
fn bundle_copies_assets_and_contains_escapes() {
    let root = tempfile::tempdir().unwrap();
    let project_dir = root.path().join("talk");
    write(&project_dir.join("img/a.svg"), b"<svg/>");
    write(&project_dir.join("img/b.svg"), b"<svg></svg>");
    write(&root.path().join("shared/b.svg"), b"<svg>outside</svg>");

    let mut p = one_step(0.0, 1.0);
    p.elements = vec![image("a", "img/a.svg", 0.0), image("b", "img/b.svg", 100.0)];
    save_project(&p, &project_dir.join("talk.json")).unwrap();
    let loaded = load_project(&project_dir.join("talk.json")).unwrap();
    assert_eq!(loaded, p);

    let out = root.path().join("bundle");
    let m = export_bundle(&loaded, &project_dir, &out).unwrap();
    assert_eq!(m.assets.len(), 2);
    for a in &m.assets {
        assert!(out.join(&a.path).is_file());
    }

    // an asset outside the project directory lands inside the bundle
    p.elements.push(image("c", "../shared/b.svg", 200.0));
    let out2 = root.path().join("bundle2");
    let m = export_bundle(&p, &project_dir, &out2).unwrap();
    let escaped = m.assets.iter().find(|a| a.source == "../shared/b.svg").unwrap();
    assert!(escaped.path.starts_with("assets/external/"));
    assert_eq!(fs::read(out2.join(&escaped.path)).unwrap(), b"<svg>outside</svg>");
    let bundled = load_project(&out2.join("project.json")).unwrap();
    for e in &bundled.elements {
        let path = e.asset_path().unwrap();
        assert!(!path.contains(".."), "{path}");
    }

    // byte-identical re-export
    let out3 = root.path().join("bundle3");
    export_bundle(&p, &project_dir, &out3).unwrap();
    for f in ["manifest.json", "project.json"] {
        assert_eq!(fs::read(out2.join(f)).unwrap(), fs::read(out3.join(f)).unwrap());
    }
}

#[test]
fn missing_assets_are_listed() {
    let dir = tempfile::tempdir().unwrap();
    let mut p = one_step(0.0, 1.0);
    p.elements = vec![image("a", "gone/a.png", 0.0), image("b", "gone/b.png", 10.0)];
    match export_bundle(&p, dir.path(), &dir.path().join("out")) {
        Err(IoError::MissingAssets(list)) => assert_eq!(list, ["gone/a.png", "gone/b.png"]),
        other => panic!("{other:?}"),
    }
}

#[test]
fn midpoint_frame_matches_replay_oracle() {
    let stroke = |start: f64, finish: f64, y: f64| {
        Stroke::from_samples(
            [InkSample::new(-50.0, y, 0.5), InkSample::new(50.0, y, 0.5)],
            start,
            finish,
            Color::BLACK,
            4.0,
        )
        .unwrap()
    };
    let collection = StrokeCollection::new(
        "ink",
        vec![stroke(0.0, 1.0, 0.0), stroke(1.0, 3.0, 20.0), stroke(3.5, 4.0, 40.0)],
    );
    let mut p = one_step(0.0, 4.0);
    p.ink.push(collection.clone());
    p.elements.push(CanvasElement::new(
        "notes",
        ElementKind::InkRef,
        Point::ORIGIN,
        Payload::Ink {
            collection: "ink".into(),
            pen: PenStyle::pen(),
            replay: Some(InkReplay { step: 0, speed: 1.0 }),
        },
    ));
    let screen = Screen::new(400.0, 300.0);
    let frames = plan_frames(&p, 4.0, screen).unwrap();
    // the replay midpoint: t = 2 s is frame 7 at 4 fps
    let mid = &frames[7];
    assert_eq!(mid.time, 2.0);
    let oracle = replay_visible(&collection, 2.0, 1.0).unwrap();
    let expected = oracle.iter().filter(|r| r.fraction > 0.0).count();
    assert_eq!(expected, 2);
    assert!(oracle.iter().any(|r| r.fraction > 0.0 && r.fraction < 1.0));
    assert_eq!(render_svg(&p, mid, screen).matches("class=\"ink\"").count(), expected);
}

#[test]
fn empty_canvas_frames_hold_only_background() {
    let dir = tempfile::tempdir().unwrap();
    let p = one_step(1.0, 1.0);
    let spec = RenderSpec::new(dir.path(), 2.0, Screen::new(100.0, 50.0));
    let s = render_frames(&p, &spec, Execution::default()).unwrap();
    assert_eq!(s.frame_count, 4);
    for f in &s.files {
        let svg = fs::read_to_string(f).unwrap();
        assert!(svg.contains("class=\"background\""));
        assert!(!svg.contains("<g"));
    }
}

#[test]
fn stroke_log_round_trip() {
    let c = StrokeCollection::new(
        "talk",
        vec![
            Stroke::from_samples(
                [InkSample::new(0.125, -3.5, 0.5), InkSample::new(1e-7, 2.0 / 3.0, 1.0)],
                0.5,
                1.25,
                Color::rgba(1, 2, 3, 200),
                2.5,
            )
            .unwrap(),
            Stroke::from_samples([InkSample::new(9.0, 9.0, 0.0)], 2.0, 2.0, Color::RED, 1.0).unwrap(),
        ],
    );
    let text = write_stroke_log(&c);
    let (back, warnings) = parse_stroke_log(&text, "unused").unwrap();
    assert!(warnings.is_empty());
    assert_eq!(back, c);
}
