# quallogic/main.py
import logging

from fastapi import FastAPI, Request
from fastapi.middleware.cors import CORSMiddleware
from fastapi.responses import JSONResponse

from quallogic import __version__
from quallogic.app.config import settings
from quallogic.routes import decide, evaluation, kripke, model, prove, qp, syntax

logging.basicConfig(level=settings.log_level, format="%(asctime)s %(levelname)s %(name)s: %(message)s")
logger = logging.getLogger(__name__)

app = FastAPI(title="Qualitative uncertainty logic workbench", version=__version__)

app.add_middleware(
    CORSMiddleware,
    allow_origins=["*"], allow_credentials=True,
    allow_methods=["*"], allow_headers=["*"],
)

# Routers
app.include_router(syntax.router)
app.include_router(evaluation.router)
app.include_router(decide.router)
app.include_router(kripke.router)
app.include_router(model.router)
app.include_router(qp.router)
app.include_router(prove.router)


@app.exception_handler(Exception)
async def unexpected_error(request: Request, exc: Exception):
    logger.exception("unhandled error on %s %s", request.method, request.url.path)
    return JSONResponse(status_code=500, content={"error": "internal", "detail": str(exc)})


@app.get("/")
def root():
    return {"service": "quallogic", "version": __version__}
