"""
Lumo API - solver sweeps, spectrum scans, verification suites and meshes exposed as a FastAPI server.
"""

from dotenv import load_dotenv
import json
import logging
from datetime import datetime
from typing import Any, Dict, List, Optional

from pydantic import BaseModel
from fastapi import Body, FastAPI, HTTPException
from fastapi.middleware.cors import CORSMiddleware

from src import __version__
from src.harness import ExperimentConfig, SpectrumConfig, SUITES, parse_config, run_experiment, run_spectrum_scan, run_suite
from src.mesh import build_lshape_mesh
from src.utils.errors import ConfigurationError
from src.utils.settings import get_settings

load_dotenv()

logger = logging.getLogger(__name__)

MAX_MESH_LEVEL = 5

app = FastAPI(
    title="Lumo API",
    description="Multigrid and mass-lumping preconditioned solvers for mixed-form fourth order parabolic problems",
    version=__version__,
)

app.add_middleware(
    CORSMiddleware,
    allow_origins=["*"],
    allow_credentials=True,
    allow_methods=["*"],
    allow_headers=["*"],
)

class SolveResponse(BaseModel):
    rows: List[Dict[str, Any]]
    manifest: Dict[str, Any]

class SpectrumResponse(BaseModel):
    rows: List[Dict[str, Any]]
    passed: bool

class CheckResponse(BaseModel):
    name: str
    satisfied: bool
    margin: float

class VerifyResponse(BaseModel):
    suite: str
    passed: bool
    checks: List[CheckResponse]

class MeshResponse(BaseModel):
    level: int
    h: float
    vertices: List[List[float]]
    triangles: List[List[int]]
    tags: Optional[List[str]] = None

def _unprocessable(exc: ConfigurationError) -> HTTPException:
    return HTTPException(status_code=422, detail={"message": str(exc), "fields": exc.fields})

def _records(frame) -> List[Dict[str, Any]]:
    return json.loads(frame.to_json(orient="records"))

@app.get("/")
async def root():
    return {"message": "Lumo solver API is running!"}

@app.get("/health")
async def health_check():
    """Health check endpoint"""
    return {
        "status": "healthy",
        "timestamp": datetime.now().isoformat(),
        "version": __version__,
        "dense_cap": get_settings().dense_cap,
    }

@app.post("/solve", response_model=SolveResponse)
def solve(payload: Dict[str, Any] = Body(...)):
    """Run an ExperimentConfig and return its rows; nothing is written to disk."""
    try:
        cfg = parse_config(ExperimentConfig, payload)
        result = run_experiment(cfg, write=False)
        return SolveResponse(rows=_records(result.frame), manifest=result.manifest)
    except ConfigurationError as e:
        raise _unprocessable(e)
    except Exception as e:
        logger.exception("solve failed")
        raise HTTPException(status_code=500, detail=f"Error running experiment: {str(e)}")

@app.post("/spectrum", response_model=SpectrumResponse)
def spectrum(payload: Dict[str, Any] = Body(...)):
    """Dense spectra for a SpectrumConfig as scatter rows re, im, h, tau, precond."""
    try:
        cfg = parse_config(SpectrumConfig, payload)
        result = run_spectrum_scan(cfg, write=False)
        return SpectrumResponse(rows=_records(result.frame), passed=result.passed)
    except ConfigurationError as e:
        raise _unprocessable(e)
    except Exception as e:
        logger.exception("spectrum scan failed")
        raise HTTPException(status_code=500, detail=f"Error computing spectrum: {str(e)}")

@app.get("/verify/{suite}", response_model=VerifyResponse)
def verify(suite: str):
    if suite not in SUITES:
        raise HTTPException(status_code=404, detail=f"Unknown suite '{suite}', expected one of {', '.join(SUITES)}")
    try:
        report = run_suite(suite)
        checks = [CheckResponse(name=c.name, satisfied=c.satisfied, margin=c.margin) for c in report.checks]
        return VerifyResponse(suite=report.suite, passed=report.passed, checks=checks)
    except Exception as e:
        logger.exception("verify %s failed", suite)
        raise HTTPException(status_code=500, detail=f"Error running suite {suite}: {str(e)}")

@app.get("/mesh/{level}", response_model=MeshResponse)
def mesh(level: int):
    if not 0 <= level <= MAX_MESH_LEVEL:
        raise HTTPException(status_code=422, detail=f"level must be between 0 and {MAX_MESH_LEVEL}")
    m = build_lshape_mesh(level)
    return MeshResponse(
        level=m.level,
        h=m.h,
        vertices=m.vertices.tolist(),
        triangles=m.triangles.tolist(),
        tags=[str(tag) for tag in m.triangle_tags],
    )

if __name__ == "__main__":
    import uvicorn
    uvicorn.run(app, host="0.0.0.0", port=8000)
